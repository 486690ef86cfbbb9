import hashlib
import json
import subprocess
import sys

import pytest

from cubica.cli import COMMANDS, DISPATCH, RunConfig, build_parser, main, run


def _hashes(d):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(d.iterdir())}


def test_dispatch_covers_commands():
    assert set(DISPATCH) == set(COMMANDS)


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig("nope").validate()
    with pytest.raises(ValueError):
        RunConfig("lvalue", workers=0).validate()
    with pytest.raises(ValueError):
        RunConfig("lvalue", Q=[-3]).validate()


def test_parser_numbers():
    ns = build_parser().parse_args(["first-moment", "--Q", "1e3", "2500.5"])
    assert ns.Q == [1000, 2500.5]
    with pytest.raises(SystemExit):
        build_parser().parse_args(["first-moment", "--Q", "nan"])


def test_first_moment_row(tmp_path):
    assert main(["first-moment", "--Q", "200", "--output", str(tmp_path), "--cache-dir", str(tmp_path / "c")]) == 0
    lines = (tmp_path / "first_moment.csv").read_text().splitlines()
    assert lines[0] == "Q,n_characters,re_moment,main_term,ratio"
    assert len(lines) == 2
    man = json.loads((tmp_path / "manifest.json").read_text())
    assert man["config"]["command"] == "first-moment" and "cache_dir" not in man["config"]
    assert "wall_time_seconds" not in man


def test_timing_flag(tmp_path):
    assert main(["delta-table", "--Q", "100", "--M", "10", "--output", str(tmp_path), "--timing"]) == 0
    assert "wall_time_seconds" in json.loads((tmp_path / "manifest.json").read_text())


def test_errors_give_nonzero_exit(tmp_path, capsys):
    assert main(["first-moment", "--Q", "3", "--output", str(tmp_path), "--no-cache"]) == 1
    assert main(["large-sieve-empirical", "--output", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate-characters", "--Q", "300"],
        ["lvalue", "--Q", "100"],
        ["lvalue", "--Q", "60", "--method", "hurwitz"],
        ["first-moment", "--Q", "150"],
        ["second-moment", "--Q", "100", "--t", "1.5"],
        ["hecke-moments", "--M", "20"],
        ["gauss-identities", "--Q", "80"],
        ["gauss-average", "--Q", "50", "--m", "2"],
        ["large-sieve-exact", "--Q", "20", "--M", "10"],
        ["large-sieve-empirical", "--Q", "100", "--M", "10", "--trials", "50", "--seed", "7"],
        ["delta-table", "--Q", "100", "1000", "--M", "10"],
        ["nonvanishing", "--Q", "150"],
    ],
)
def test_rerun_is_byte_identical(tmp_path, argv):
    cache = str(tmp_path / "cache")
    out = tmp_path / "out"
    full = argv + ["--output", str(out), "--cache-dir", cache]
    assert main(full) == 0
    first = _hashes(out)
    assert main(full) == 0
    assert _hashes(out) == first


def test_module_entry_point(tmp_path):
    out = subprocess.run(
        [sys.executable, "-m", "cubica", "delta-table", "--Q", "50", "--M", "7", "--output", str(tmp_path)],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert (tmp_path / "delta_table.csv").exists()
