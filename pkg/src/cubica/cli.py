"""Command-line driver: ``cubica <command> [flags]``.

Every command writes one or more CSV files and a ``manifest.json`` into the
output directory.  Outputs depend only on the configuration (and on cached
values, which equal recomputed ones), so reruns are byte-identical.  Wall-clock
times go to stderr, and into the files only with ``--timing``.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import platform
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .errors import CubicaError

log = logging.getLogger("cubica")

COMMANDS = (
    "enumerate-characters",
    "lvalue",
    "first-moment",
    "second-moment",
    "hecke-moments",
    "constant-c",
    "gauss-identities",
    "gauss-average",
    "large-sieve-exact",
    "large-sieve-empirical",
    "delta-table",
    "nonvanishing",
    "poisson-check",
)


@dataclass
class RunConfig:
    command: str
    Q: list = field(default_factory=list)
    M: list = field(default_factory=list)
    t: float = 0.0
    trials: int = 50
    seed: int = 0
    threshold: float = 1e-6
    eps: float = 0.1
    m: int = 1
    which: list = field(default_factory=list)
    method: str = "afe"
    cache_dir: str | None = None
    no_cache: bool = False
    workers: int = 1
    output: str = "."
    timing: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.workers < 1:
            raise ValueError("--workers must be >= 1")
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        if self.threshold <= 0:
            raise ValueError("--threshold must be positive")
        if self.eps < 0:
            raise ValueError("--eps must be nonnegative")
        if any(q <= 0 for q in self.Q) or any(x <= 0 for x in self.M):
            raise ValueError("--Q and --M must be positive")


def _num(text: str):
    x = float(text)
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text}")
    return int(x) if x.is_integer() else x


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _write_csv(path: Path, header, rows) -> Path:
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
    return path


def _need(values: list, name: str, default=None) -> list:
    if values:
        return values
    if default is not None:
        return default
    raise ValueError(f"{name} is required for this command")


def _cache(cfg: RunConfig):
    if cfg.no_cache:
        return None
    from .cache import LValueCache

    return LValueCache(cfg.cache_dir)


# ----------------------------------------------------------------------
# command implementations; each returns a list of written files


def _cmd_enumerate(cfg, out):
    from .characters import enumerate_cubic_characters, write_character_csv

    Q = int(_need(cfg.Q, "--Q")[0])
    path = out / "characters.csv"
    write_character_csv(enumerate_cubic_characters(Q), path)
    return [path]


def _cmd_lvalue(cfg, out):
    from .characters import enumerate_cubic_characters
    from .lfunctions import l_value_afe, l_value_hurwitz, write_lvalue_csv

    Q = int(_need(cfg.Q, "--Q")[0])
    chars = enumerate_cubic_characters(Q)
    if cfg.method == "hurwitz":
        rows = [(chi, l_value_hurwitz(chi, 0.5 + 1j * cfg.t)) for chi in chars]
    else:
        rows = [(chi, l_value_afe(chi, alpha=1j * cfg.t)) for chi in chars]
    path = out / "lvalues.csv"
    write_lvalue_csv(rows, path)
    return [path]


def _cmd_first_moment(cfg, out):
    from .moments import first_moment

    cache = _cache(cfg)
    reports = [first_moment(Q, workers=cfg.workers, cache=cache) for Q in _need(cfg.Q, "--Q")]
    header = ["Q", "n_characters", "re_moment", "main_term", "ratio"]
    if cfg.timing:
        header.append("seconds")
    rows = []
    for r in reports:
        row = [r.Q, r.n_characters, r.moment_value.real, r.main_term, r.ratio]
        if cfg.timing:
            row.append(round(r.wall_time, 3))
        rows.append(row)
    p1 = _write_csv(out / "first_moment.csv", header, rows)
    p2 = _write_csv(
        out / "first_moment_plot.csv",
        ["Q", "ratio", "ratio_family"],
        [[r.Q, r.ratio, r.ratio_family] for r in reports],
    )
    return [p1, p2]


def _cmd_second_moment(cfg, out):
    from .moments import second_moment

    cache = _cache(cfg)
    rows = [[Q, cfg.t, second_moment(Q, cfg.t, workers=cfg.workers, cache=cache)] for Q in _need(cfg.Q, "--Q")]
    return [_write_csv(out / "second_moment.csv", ["Q", "t", "second_moment"], rows)]


def _cmd_hecke_moments(cfg, out):
    from .hecke import hecke_moments

    rows = []
    for M in _need(cfg.M, "--M"):
        r = hecke_moments(int(M), cfg.t)
        rows.append([r.M, r.t, r.second, r.weighted_first])
    return [_write_csv(out / "hecke_moments.csv", ["M", "t", "second", "weighted_first"], rows)]


def _cmd_constant_c(cfg, out):
    from .hecke import dedekind_residue_probe, hecke_residue_probe
    from .moments import constant_c_family, constant_c_report, family_density

    r = constant_c_report()
    probe = hecke_residue_probe()
    rows = [
        ["c", r.c],
        ["c_omega", r.c_omega],
        ["zeta_Qw_2", r.zeta_K_2],
        ["zeta_2", r.zeta_2],
        ["Z_3_2_series", r.z_series],
        ["Z_3_2_euler", r.z_euler],
        ["Z_3_2_series_tail", r.z_series_tail],
        ["Z_3_2_euler_tail", r.z_euler_tail],
        ["Z_route_gap", r.route_gap],
        ["c_omega_residue_probe", dedekind_residue_probe()],
        ["hecke_residue_m8", probe.estimate],
        ["hecke_residue_m8_closed_form", probe.closed_form],
        ["family_density", family_density()],
        ["c_family", constant_c_family()],
    ]
    return [_write_csv(out / "constant_c.csv", ["quantity", "value"], rows)]


def _cmd_gauss_identities(cfg, out):
    from .gauss import identity_suite

    X = int(_need(cfg.Q, "--Q", [2000])[0])
    rep = identity_suite(X)
    path = out / "gauss_identities.csv"
    rep.write_csv(path)
    if not rep.passed:
        raise CubicaError(f"Gauss sum identities failed: {[k for k, v in rep.results.items() if not v.passed]}")
    return [path]


def _cmd_gauss_average(cfg, out):
    from .gauss import gauss_average

    rows = []
    for Q in _need(cfg.Q, "--Q"):
        v = gauss_average(cfg.m, Q)
        rows.append([cfg.m, Q, v.real, v.imag])
    return [_write_csv(out / "gauss_average.csv", ["m", "Q", "re", "im"], rows)]


def _cmd_ls_exact(cfg, out):
    from .large_sieve import NORM_IDS, norm_value, write_norm_csv

    which = [w.upper() for w in cfg.which] or list(NORM_IDS)
    reps = [norm_value(w, Q, M) for Q in _need(cfg.Q, "--Q") for M in _need(cfg.M, "--M") for w in which]
    path = out / "large_sieve_exact.csv"
    write_norm_csv(reps, path)
    return [path]


def _cmd_ls_empirical(cfg, out):
    from .large_sieve import empirical_ratio, write_empirical_csv

    reps = [
        empirical_ratio(Q, M, cfg.trials, cfg.seed, cfg.eps)
        for Q in _need(cfg.Q, "--Q")
        for M in _need(cfg.M, "--M")
    ]
    path = out / "large_sieve_empirical.csv"
    write_empirical_csv(reps, path)
    return [path]


def _cmd_delta_table(cfg, out):
    from .large_sieve import delta_argmin, delta_bound, delta_terms

    rows = []
    for Q in _need(cfg.Q, "--Q"):
        for M in _need(cfg.M, "--M"):
            rows.append([Q, M, cfg.eps, *delta_terms(Q, M), delta_bound(Q, M, cfg.eps), delta_argmin(Q, M)])
    header = ["Q", "M", "eps", "term1", "term2", "term3", "term4", "delta", "argmin"]
    return [_write_csv(out / "delta_table.csv", header, rows)]


def _cmd_nonvanishing(cfg, out):
    from .moments import nonvanishing_count

    cache = _cache(cfg)
    rows = []
    for Q in _need(cfg.Q, "--Q"):
        r = nonvanishing_count(Q, cfg.threshold, workers=cfg.workers, cache=cache)
        rows.append([Q, cfg.threshold, r.count, r.total, r.min_abs])
    return [_write_csv(out / "nonvanishing.csv", ["Q", "threshold", "count", "total", "min_abs"], rows)]


def _cmd_poisson(cfg, out):
    from .characters import characters_for_conductor
    from .eisenstein import EisensteinInt
    from .gauss import poisson_1d_check, poisson_2d_check
    from .weights import DEFAULT_WEIGHT, GaussianWeight

    rows = []
    gw = GaussianWeight(1.5, 0.5)
    for q, M in ((7, 10), (13, 25)):
        for chi in characters_for_conductor(q):
            for name, w in (("gaussian", gw), ("bump", DEFAULT_WEIGHT)):
                rows.append(["1d", f"{chi.generator}", name, M, poisson_1d_check(chi, w, M)])
    for n1, n2 in ((EisensteinInt(1, 3), EisensteinInt(1, 0)), (EisensteinInt(1, 0), EisensteinInt(-2, -3)), (EisensteinInt(1, 3), EisensteinInt(-2, -3))):
        rows.append(["2d", f"{n1};{n2}", "bump", 20, poisson_2d_check(n1, n2, DEFAULT_WEIGHT, 20)])
    return [_write_csv(out / "poisson_check.csv", ["kind", "instance", "weight", "M", "deviation"], rows)]


DISPATCH = {
    "enumerate-characters": _cmd_enumerate,
    "lvalue": _cmd_lvalue,
    "first-moment": _cmd_first_moment,
    "second-moment": _cmd_second_moment,
    "hecke-moments": _cmd_hecke_moments,
    "constant-c": _cmd_constant_c,
    "gauss-identities": _cmd_gauss_identities,
    "gauss-average": _cmd_gauss_average,
    "large-sieve-exact": _cmd_ls_exact,
    "large-sieve-empirical": _cmd_ls_empirical,
    "delta-table": _cmd_delta_table,
    "nonvanishing": _cmd_nonvanishing,
    "poisson-check": _cmd_poisson,
}


def _versions() -> dict:
    import numpy
    import scipy
    import sympy

    return {
        "cubica": __version__,
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
    }


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        cfg.validate()
        out = Path(cfg.output)
        out.mkdir(parents=True, exist_ok=True)
        t0 = time.perf_counter()
        files = DISPATCH[cfg.command](cfg, out)
        elapsed = time.perf_counter() - t0
    except (CubicaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    config = asdict(cfg)
    # the cache location does not influence results
    config.pop("cache_dir")
    manifest = {"config": config, "versions": _versions(), "files": sorted(p.name for p in files)}
    if cfg.timing:
        manifest["wall_time_seconds"] = round(elapsed, 3)
    with (out / "manifest.json").open("w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{cfg.command}: wrote {', '.join(p.name for p in files)} in {elapsed:.2f}s", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubica", description="Cubic characters over Z[omega]: experiments.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--Q", type=_num, nargs="+", default=[], help="conductor scale(s); norm bound for gauss-identities")
    p.add_argument("--M", type=_num, nargs="+", default=[], help="length scale(s) of the m-sums")
    p.add_argument("--t", type=float, default=0.0, help="height on the critical line")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=1e-6)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--m", type=int, default=1, help="twist m for gauss-average")
    p.add_argument("--which", nargs="+", default=[], help="norm ids for large-sieve-exact (default: all)")
    p.add_argument("--method", choices=("afe", "hurwitz"), default="afe")
    p.add_argument("--cache-dir", default=None, help="cache directory (default $CUBICA_CACHE_DIR)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--output", default=".", help="output directory")
    p.add_argument("--timing", action="store_true", help="record wall-clock times in the outputs")
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
