"""
Monitoring and Metrics
Decode counters, operation counts and structured logging setup.
"""

import logging
import os
import threading
import time
from datetime import datetime
from functools import wraps
from typing import Dict, Optional

from prometheus_client import Counter, Histogram

try:
    from pythonjsonlogger.json import JsonFormatter
except ImportError:  # python-json-logger < 3
    from pythonjsonlogger.jsonlogger import JsonFormatter

# Prometheus metrics
decode_requests = Counter(
    'bch_decode_requests_total',
    'Total number of decode attempts',
    ['stage', 'status']
)

chase_edges = Counter(
    'bch_chase_edges_total',
    'Decoding-tree edges processed'
)

chase_fires = Counter(
    'bch_chase_fires_total',
    'Stopping-criterion fires',
    ['outcome']
)

field_multiplications = Counter(
    'bch_field_multiplications_total',
    'Counted GF(2^s) multiplications',
    ['phase']
)

decode_duration = Histogram(
    'bch_decode_duration_seconds',
    'Time spent per decode stage',
    ['stage']
)


def _empty_metrics() -> Dict:
    return {
        'total_decodes': 0,
        'successful_decodes': 0,
        'failed_decodes': 0,
        'hd_attempts': 0,
        'chase_attempts': 0,
        'edges': 0,
        'fires': 0,
        'false_fires': 0,
        'edge_multiplications': 0,
        'eval_multiplications': 0,
        'average_processing_time': 0.0,
        'total_processing_time': 0.0,
        'errors': []
    }


class DecodeMonitor:
    """In-process decode statistics, mirrored into the Prometheus counters."""

    def __init__(self):
        self._lock = threading.Lock()
        self.metrics = _empty_metrics()

    def record_decode(self, stage: str, success: bool, processing_time: float,
                      stats: Optional[Dict[str, int]] = None):
        """
        Record one decode attempt.

        Args:
            stage: 'hd', 'chase' or a campaign name
            success: whether a codeword was produced
            processing_time: seconds
            stats: ChaseStats.as_record() for Chase attempts
        """
        status = 'success' if success else 'failed'
        with self._lock:
            self.metrics['total_decodes'] += 1
            self.metrics['successful_decodes' if success else 'failed_decodes'] += 1
            if stage == 'hd':
                self.metrics['hd_attempts'] += 1
            elif stage == 'chase':
                self.metrics['chase_attempts'] += 1
            if stats:
                self.metrics['edges'] += stats['edges']
                self.metrics['fires'] += stats['fires']
                self.metrics['false_fires'] += stats['false_fires']
                self.metrics['edge_multiplications'] += stats['edge_multiplications']
                self.metrics['eval_multiplications'] += stats['eval_multiplications']
            self.metrics['total_processing_time'] += processing_time
            self.metrics['average_processing_time'] = (
                self.metrics['total_processing_time'] / self.metrics['total_decodes']
            )

        decode_requests.labels(stage=stage, status=status).inc()
        decode_duration.labels(stage=stage).observe(processing_time)
        if stats:
            chase_edges.inc(stats['edges'])
            chase_fires.labels(outcome='accepted').inc(stats['fires'] - stats['false_fires'])
            chase_fires.labels(outcome='rejected').inc(stats['false_fires'])
            field_multiplications.labels(phase='edge').inc(stats['edge_multiplications'])
            field_multiplications.labels(phase='eval').inc(stats['eval_multiplications'])

    def record_error(self, error_type: str, error_message: str):
        with self._lock:
            self.metrics['errors'].append({
                'type': error_type,
                'message': error_message,
                'timestamp': datetime.now().isoformat()
            })
            # Keep only last 100 errors
            self.metrics['errors'] = self.metrics['errors'][-100:]
        decode_requests.labels(stage='error', status=error_type).inc()

    def get_stats(self) -> Dict:
        with self._lock:
            metrics = dict(self.metrics, errors=list(self.metrics['errors']))
        return {
            **metrics,
            'success_rate': (
                metrics['successful_decodes'] / max(metrics['total_decodes'], 1) * 100
            ),
            'false_fire_share': (
                metrics['false_fires'] / max(metrics['fires'], 1)
            ),
        }

    def reset(self):
        with self._lock:
            self.metrics = _empty_metrics()


# Global monitor instance
decode_monitor = DecodeMonitor()


def monitor_performance(func):
    """Time a campaign entry point and record any exception by type."""
    @wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.time()
        success = False
        try:
            result = func(*args, **kwargs)
            success = True
            return result
        except Exception as e:
            decode_monitor.record_error(error_type=type(e).__name__, error_message=str(e))
            raise
        finally:
            decode_duration.labels(stage=func.__name__).observe(time.time() - start_time)
            logging.getLogger(func.__module__).debug(
                '%s finished in %.3fs (success=%s)', func.__name__, time.time() - start_time, success
            )
    return wrapper


def setup_logging(level: Optional[str] = None, fmt: Optional[str] = None):
    """
    Configure the root logger once per process.

    LOG_LEVEL (default INFO) and LOG_FORMAT ('text' or 'json', default text)
    are read from the environment when not given.
    """
    log_level = (level or os.getenv('LOG_LEVEL', 'INFO')).upper()
    log_format = (fmt or os.getenv('LOG_FORMAT', 'text')).lower()

    handler = logging.StreamHandler()
    if log_format == 'json':
        handler.setFormatter(JsonFormatter('%(asctime)s %(name)s %(levelname)s %(message)s'))
    else:
        handler.setFormatter(logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s'))

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        handlers=[handler],
        force=True,
    )
