# Services package - decoders and experiment campaigns
