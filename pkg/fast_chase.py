#!/usr/bin/env python3
"""
Fast Chase Decoder - command-line entry point.

Hard-decision and fast Chase soft-decision decoding of binary BCH codes,
plus seeded simulation, false-fire and complexity campaigns.
"""

import argparse
import json
import logging
import sys
import time
from typing import List, Optional

import numpy as np

from config.settings import RunConfig, load_run_config, parse_float_list
from services.bch_code import bits_to_hex, hex_to_bits, syndrome
from services.campaign import bench, build_params, chase_config, false_fire, simulate
from services.chase_decoder import chase_decode
from services.key_solver import decode_pipeline_key, hd_decode
from services.monitoring import decode_monitor, setup_logging
from utils.exceptions import CodeConstructionError, ConfigError, DecoderError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DECODE_FAILURE = 1
EXIT_USAGE = 2


def _parse_reliabilities(text: str, n: int) -> np.ndarray:
    """Comma-separated scores, or @path to a file holding them."""
    if text.startswith('@'):
        with open(text[1:], 'r', encoding='utf-8') as f:
            text = f.read()
    try:
        values = np.array(parse_float_list(text.replace('\n', ',')), dtype=float)
    except ValueError as exc:
        raise CodeConstructionError(f'Malformed reliabilities: {exc}') from exc
    if values.shape != (n,):
        raise CodeConstructionError(f'Expected {n} reliabilities, got {values.size}')
    return values


def _write_table(df, out: Optional[str]):
    if out:
        df.to_csv(out, index=False)
        logger.info('Wrote %d rows to %s', len(df), out)
    else:
        sys.stdout.write(df.to_csv(index=False))


# Commands

def cmd_info(cfg: RunConfig, args) -> int:
    params = build_params(cfg)
    print(json.dumps(params.summary(), indent=2))
    return EXIT_OK


def cmd_decode(cfg: RunConfig, args) -> int:
    """Syndrome, key basis, HD attempt, then Chase when HD fails."""
    if not args.received:
        raise ConfigError('decode needs --received HEX')
    params = build_params(cfg)
    received = hex_to_bits(args.received, params.n)
    if args.reliabilities:
        reliabilities = _parse_reliabilities(args.reliabilities, params.n)
    else:
        logger.warning('No reliabilities given; all coordinates treated as equally reliable')
        reliabilities = np.ones(params.n)
    ccfg = chase_config(cfg).validate(params.n)

    syn = syndrome(params, received)
    start = time.time()
    key = decode_pipeline_key(params, syn)
    hd = hd_decode(params, syn, key)
    decode_monitor.record_decode('hd', hd.success, time.time() - start)

    report = {
        'code': params.summary(),
        'syndrome_zero': syn.is_zero(),
        'hd': {'success': hd.success, 'support': list(hd.support), 'reason': hd.reason},
        'chase': None,
        'best': None,
        'decoded': None,
    }
    error = hd.error_vector(params.n) if hd.success else None

    if not hd.success:
        start = time.time()
        outcome = chase_decode(params, key, syn, reliabilities, ccfg)
        stats = outcome.stats.as_record()
        decode_monitor.record_decode('chase', outcome.success, time.time() - start, stats)
        report['chase'] = {
            'unreliable': list(outcome.unreliable),
            'candidates': [
                {'support': list(c.support), 'path': list(c.path),
                 'verification': c.verification.value, 'depth': c.depth}
                for c in outcome.candidates
            ],
            'stats': stats,
        }
        best = outcome.best(reliabilities)
        if best is not None:
            report['best'] = list(best.support)
            error = best.error_vector(params.n)

    if error is not None:
        report['decoded'] = bits_to_hex(received ^ error)
    print(json.dumps(report, indent=2))
    return EXIT_OK if error is not None else EXIT_DECODE_FAILURE


def cmd_simulate(cfg: RunConfig, args) -> int:
    _write_table(simulate(cfg), cfg.out)
    return EXIT_OK


def cmd_fpr(cfg: RunConfig, args) -> int:
    _write_table(false_fire(cfg), cfg.out)
    return EXIT_OK


def cmd_bench(cfg: RunConfig, args) -> int:
    _write_table(bench(cfg), cfg.out)
    return EXIT_OK


COMMANDS = {
    'info': cmd_info,
    'decode': cmd_decode,
    'simulate': cmd_simulate,
    'fpr': cmd_fpr,
    'bench': cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    code = common.add_argument_group('code')
    code.add_argument('--s', type=int, default=None, help='Field extension degree (n = 2^s - 1)')
    code.add_argument('--n', type=int, default=None, help='Code length, alternative to --s')
    code.add_argument('--t', type=int, default=None, help='Designed error-correction radius')
    code.add_argument('--prim-poly', dest='prim_poly', default=None,
                      help='Primitive polynomial as a hex bitmask, e.g. 0x11D')

    chase = common.add_argument_group('chase')
    chase.add_argument('--eta', type=int, default=None, help='Number of least reliable coordinates')
    chase.add_argument('--rmax', dest='r_max', type=int, default=None, help='Maximum flips per test pattern')
    chase.add_argument('--eval', dest='eval_method', choices=['gcd', 'deriv'], default=None,
                       help='Candidate evaluation method')
    chase.add_argument('--collect-all', dest='collect_all', action='store_const', const=True,
                       default=None, help='Traverse the whole tree instead of stopping at the first candidate')

    exp = common.add_argument_group('experiments')
    exp.add_argument('--snr', type=parse_float_list, default=None, help='Comma-separated Eb/N0 points in dB')
    exp.add_argument('--trials', type=int, default=None)
    exp.add_argument('--seed', type=int, default=None)
    exp.add_argument('--inside', type=int, default=None, help='Injected errors among the unreliable coordinates')
    exp.add_argument('--epsilon', type=int, default=None, help='Injected error weight')
    exp.add_argument('--path-len', dest='path_len', type=int, default=None)
    exp.add_argument('--mode', choices=['non_error', 'any', 'both'], default=None,
                     help='False-fire path positions')
    exp.add_argument('--workers', type=int, default=None)
    exp.add_argument('--out', default=None, help='CSV output path (stdout when omitted)')

    misc = common.add_argument_group('run')
    misc.add_argument('--config', default=None, help='KEY=VALUE config file')
    misc.add_argument('--log-level', dest='log_level', default=None)
    misc.add_argument('--log-format', dest='log_format', choices=['text', 'json'], default=None)

    parser = argparse.ArgumentParser(
        description='Fast Chase decoding of binary BCH codes',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Code summary
  python fast_chase.py info --s 8 --t 8

  # Decode one received word
  python fast_chase.py decode --s 4 --t 2 --received 1a2b --reliabilities @rel.txt

  # FER/BER campaign
  python fast_chase.py simulate --s 8 --t 8 --eta 8 --rmax 3 --snr 4,5,6 --trials 1000 --out fer.csv

  # False-fire rate of the stopping criterion
  python fast_chase.py fpr --s 8 --t 8 --epsilon 14 --path-len 6 --trials 10000
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('info', parents=[common], help='Print the code parameters')
    decode = sub.add_parser('decode', parents=[common], help='Decode one received word')
    decode.add_argument('--received', default=None, help='Received word as hex, MSB = coordinate n-1')
    decode.add_argument('--reliabilities', default=None, help='Comma-separated scores or @file')
    sub.add_parser('simulate', parents=[common], help='FER/BER over BPSK/AWGN')
    sub.add_parser('fpr', parents=[common], help='Stopping-criterion false-fire rate')
    sub.add_parser('bench', parents=[common], help='Per-edge multiplication counts')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        from dotenv import load_dotenv
        load_dotenv()
    except ImportError:
        pass

    args = build_parser().parse_args(argv)
    setup_logging(args.log_level, args.log_format)

    try:
        cfg = load_run_config(args.config, overrides=vars(args))
        code = COMMANDS[args.command](cfg, args)
    except (DecoderError, ValueError, OSError) as e:
        logger.error('%s: %s', type(e).__name__, e)
        return EXIT_USAGE
    logger.debug('Monitor: %s', decode_monitor.get_stats())
    return code


if __name__ == '__main__':
    sys.exit(main())
