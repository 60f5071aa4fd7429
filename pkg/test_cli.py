"""Tests for the fast_chase command-line entry point."""

import io
import json

import pandas as pd
import pytest

from fast_chase import EXIT_DECODE_FAILURE, EXIT_OK, EXIT_USAGE, main
from services.bch_code import bits_to_hex, vector_of
from services.campaign import SIMULATE_COLUMNS
from services.monitoring import decode_monitor

ERROR_255 = (3, 10, 40, 77, 100, 150, 200, 230, 254)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_info(capsys):
    code, out = run(capsys, 'info', '--s', '4', '--t', '2')
    assert code == EXIT_OK
    summary = json.loads(out)
    assert (summary['n'], summary['k'], summary['d']) == (15, 7, 5)
    code, out = run(capsys, 'info', '--s', '4', '--t', '1')
    assert json.loads(out)['k'] == 11


def test_info_rejects_bad_radius(capsys):
    assert main(['info', '--t', '0']) == EXIT_USAGE


def test_decode_zero_syndrome(capsys):
    code, out = run(capsys, 'decode', '--s', '4', '--t', '2', '--received', '0')
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['syndrome_zero'] is True
    assert report['hd']['success'] is True
    assert report['hd']['support'] == []
    assert report['decoded'] == '0000'
    assert report['chase'] is None


def test_decode_beyond_radius_with_chase(capsys, tmp_path):
    received = bits_to_hex(vector_of(ERROR_255, 255))
    reliabilities = [1.0] * 255
    reliabilities[3] = reliabilities[10] = 0.1
    rel_file = tmp_path / 'rel.txt'
    rel_file.write_text('\n'.join(str(x) for x in reliabilities))

    code, out = run(capsys, 'decode', '--s', '8', '--t', '8', '--eta', '4', '--rmax', '2',
                    '--collect-all', '--received', received, '--reliabilities', f'@{rel_file}')
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['hd']['success'] is False
    assert report['chase']['unreliable'] == [3, 10, 0, 1]
    assert list(ERROR_255) in [c['support'] for c in report['chase']['candidates']]
    assert report['best'] is not None
    assert 'monitor' not in report
    assert decode_monitor.get_stats()['chase_attempts'] == 1


def test_decode_output_is_identical_across_runs(capsys):
    received = bits_to_hex(vector_of(ERROR_255, 255))
    argv = ('decode', '--s', '8', '--t', '8', '--eta', '4', '--rmax', '2', '--received', received)
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    assert set(json.loads(first[1])) == {'code', 'syndrome_zero', 'hd', 'chase', 'best', 'decoded'}


def test_decode_failure_exit_code(capsys):
    received = bits_to_hex(vector_of(range(0, 240, 20), 255))
    code, out = run(capsys, 'decode', '--s', '8', '--t', '8', '--eta', '2', '--rmax', '1',
                    '--received', received)
    assert code == EXIT_DECODE_FAILURE
    report = json.loads(out)
    assert report['decoded'] is None
    assert report['chase']['candidates'] == []


@pytest.mark.parametrize('extra', [
    ['--received', 'xyz'],
    ['--received', '1', '--reliabilities', '1,2,3'],
    ['--received', '1', '--reliabilities', 'a,b'],
    [],
])
def test_decode_usage_errors(capsys, extra):
    assert main(['decode', '--s', '4', '--t', '2', *extra]) == EXIT_USAGE


def test_argparse_rejects_unknown_choice():
    with pytest.raises(SystemExit) as exc:
        main(['decode', '--eval', 'bm'])
    assert exc.value.code == 2


def test_simulate_zero_trials_prints_header(capsys):
    code, out = run(capsys, 'simulate', '--trials', '0')
    assert code == EXIT_OK
    assert out.strip() == ','.join(SIMULATE_COLUMNS)


def test_bench_writes_csv(tmp_path, capsys):
    out_path = tmp_path / 'bench.csv'
    code = main(['bench', '--s', '8', '--t', '8', '--eta', '4', '--rmax', '4', '--trials', '1',
                 '--out', str(out_path)])
    assert code == EXIT_OK
    df = pd.read_csv(out_path)
    assert list(df['kind']) == ['depth'] * 4 + ['tree']
    assert df['tree_bound'].iloc[-1] == 4 * 2 ** 5 + 2 ** 4 - 1


def test_fpr_reads_config_file(tmp_path, capsys):
    cfg = tmp_path / 'fpr.env'
    cfg.write_text('BCH_S=8\nBCH_T=8\nSIM_EPSILON=14\nSIM_PATH_LEN=6\nSIM_TRIALS=20\n')
    code, out = run(capsys, 'fpr', '--config', str(cfg), '--trials', '10')
    assert code == EXIT_OK
    df = pd.read_csv(io.StringIO(out))
    assert df['trials'].iloc[0] == 10
    assert df['edges'].iloc[0] == 60
    assert df['epsilon'].iloc[0] == 14
