"""Character matrices of the cubic large sieve and their norms.

For a row set of primary n with Q < N(n) <= 2Q and a column set of rational m
in (M, 2M], the matrix has entries chi_n(m) = (m/n)_3.  The norms

* B1: rows squarefree with no rational prime divisor, columns squarefree and
  coprime to 3 (this is the family of primitive cubic characters);
* B2: rows squarefree;
* B3: all primary rows;
* B4: the Hermitian form sum_{(m1,m2)=1} a_{m1} conj(a_{m2}) sum_n chi_{m1}(n) conj(chi_{m2}(n))
  over all primary rows, i.e. the Gram matrix of B3 with non-coprime pairs
  (the diagonal included) set to zero; its value is the largest eigenvalue;
* C1: the transpose of B1, with entries computed through reciprocity as
  (n/m*)_3, m* = +-m primary;
* C2: C1 with every integer m in (M, 2M] as a row.

B1-B3, C1 and C2 are largest squared singular values.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .eisenstein import EisensteinInt, enumerate_primary_arrays, squarefree_sieve
from .errors import TooLarge
from .symbol import exponents_to_complex, rational_symbol_exponents, symbol_exponents

MAX_ENTRIES = 4_000_000
POWER_TOL = 1e-8
POWER_MAXITER = 10_000
NORM_IDS = ("B1", "B2", "B3", "B4", "C1", "C2")


def delta_terms(Q: float, M: float) -> tuple[float, float, float, float]:
    return (
        Q ** (5 / 3) + M,
        Q ** (4 / 3) + Q**0.5 * M,
        Q ** (11 / 9) + Q ** (2 / 3) * M,
        Q + Q ** (1 / 3) * M ** (5 / 3) + M ** (12 / 5),
    )


def delta_bound(Q: float, M: float, eps: float = 0.0) -> float:
    """(QM)^eps min{Q^(5/3)+M, Q^(4/3)+Q^(1/2)M, Q^(11/9)+Q^(2/3)M, Q+Q^(1/3)M^(5/3)+M^(12/5)}."""
    if Q < 1 or M < 1:
        raise ValueError("Q and M must be >= 1")
    return (Q * M) ** eps * min(delta_terms(Q, M))


def delta_argmin(Q: float, M: float) -> int:
    """Index (1-4) of the expression attaining the minimum."""
    t = delta_terms(Q, M)
    return int(np.argmin(t)) + 1


@dataclass
class SieveInstance:
    Q: float
    M: float
    which: str
    rows: list = field(repr=False)
    cols: list = field(repr=False)
    matrix: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


@dataclass(frozen=True)
class NormReport:
    which: str
    Q: float
    M: float
    value: float
    method: str
    shape: tuple = ()


def _rows(Q: float, *, squarefree: bool, no_rational: bool) -> tuple[np.ndarray, np.ndarray]:
    a, b, _ = enumerate_primary_arrays(
        int(math.floor(2 * Q)),
        squarefree=squarefree,
        no_rational_prime_divisor=no_rational,
        lower=int(math.floor(Q)),
    )
    return a, b


def _cols(M: float, *, squarefree: bool, coprime_to_3: bool) -> np.ndarray:
    lo, hi = int(math.floor(M)) + 1, int(math.floor(2 * M))
    m = np.arange(lo, hi + 1, dtype=np.int64)
    if squarefree:
        m = m[squarefree_sieve(hi)[m]]
    if coprime_to_3:
        m = m[m % 3 != 0]
    return m


def _matrix_by_columns(na: np.ndarray, nb: np.ndarray, ms: np.ndarray) -> np.ndarray:
    out = np.empty((na.size, ms.size), dtype=complex)
    for j, m in enumerate(ms.tolist()):
        out[:, j] = exponents_to_complex(rational_symbol_exponents(m, na, nb))
    return out


def _matrix_by_reciprocity(ms: np.ndarray, na: np.ndarray, nb: np.ndarray) -> np.ndarray:
    """Rows m, columns n, entries (n/m*)_3 with m* = +-m primary (m coprime to 3)."""
    out = np.empty((ms.size, na.size), dtype=complex)
    for i, m in enumerate(ms.tolist()):
        mstar = m if m % 3 == 1 else -m
        out[i, :] = exponents_to_complex(symbol_exponents(na, nb, EisensteinInt(mstar, 0)))
    return out


def build_instance(which: str, Q: float, M: float) -> SieveInstance:
    """Matrix for the given norm.  For C1/C2 the first argument is still the
    row scale Q of the n's and M the scale of the m's."""
    which = which.upper()
    if which not in NORM_IDS:
        raise ValueError(f"unknown norm {which!r}")
    if which in ("B1", "C1", "C2"):
        na, nb = _rows(Q, squarefree=True, no_rational=True)
    elif which == "B2":
        na, nb = _rows(Q, squarefree=True, no_rational=False)
    else:
        na, nb = _rows(Q, squarefree=False, no_rational=False)
    if which == "C2":
        ms = _cols(M, squarefree=False, coprime_to_3=False)
    else:
        ms = _cols(M, squarefree=True, coprime_to_3=True)
    rows = list(zip(na.tolist(), nb.tolist()))
    if which == "C1":
        mat = _matrix_by_reciprocity(ms, na, nb)
        return SieveInstance(Q, M, which, ms.tolist(), rows, mat)
    if which == "C2":
        mat = _matrix_by_columns(na, nb, ms).T.copy()
        return SieveInstance(Q, M, which, ms.tolist(), rows, mat)
    return SieveInstance(Q, M, which, rows, ms.tolist(), _matrix_by_columns(na, nb, ms))


def _coprime_mask(ms: np.ndarray) -> np.ndarray:
    return np.gcd.outer(ms, ms) == 1


def _check_size(shape, max_entries) -> None:
    if shape[0] * shape[1] > max_entries:
        raise TooLarge(f"matrix of shape {shape} exceeds {max_entries} entries")


def _largest_sq_singular(mat: np.ndarray) -> float:
    if mat.size == 0:
        return 0.0
    s = np.linalg.svd(mat, compute_uv=False)
    return float(s[0] ** 2)


def norm_exact(which: str, Q: float, M: float, *, max_entries: int = MAX_ENTRIES) -> NormReport:
    """Exact value of the norm by a dense SVD (eigen-decomposition for B4)."""
    inst = build_instance(which, Q, M)
    _check_size(inst.shape, max_entries)
    if inst.which == "B4":
        ms = np.asarray(inst.cols, dtype=np.int64)
        G = inst.matrix.conj().T @ inst.matrix
        G = np.where(_coprime_mask(ms), G, 0)
        value = float(np.linalg.eigvalsh(G)[-1]) if G.size else 0.0
        return NormReport("B4", Q, M, value, "exact-eigh", inst.shape)
    return NormReport(inst.which, Q, M, _largest_sq_singular(inst.matrix), "exact-SVD", inst.shape)


def norm_power(which: str, Q: float, M: float, *, seed: int = 0, tol: float = POWER_TOL, maxiter: int = POWER_MAXITER) -> NormReport:
    """Largest squared singular value by power iteration on X^* X (B1-B3, C1, C2)."""
    inst = build_instance(which, Q, M)
    if inst.which == "B4":
        raise ValueError("power iteration is not used for B4")
    X = inst.matrix
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(X.shape[1]) + 1j * rng.standard_normal(X.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(maxiter):
        w = X.conj().T @ (X @ v)
        new = float(np.linalg.norm(w))
        if new == 0:
            break
        v = w / new
        if abs(new - lam) <= tol * new:
            lam = new
            break
        lam = new
    return NormReport(inst.which, Q, M, lam, "power-iteration", inst.shape)


def norm_value(which: str, Q: float, M: float) -> NormReport:
    try:
        return norm_exact(which, Q, M)
    except TooLarge:
        return norm_power(which, Q, M)


@dataclass(frozen=True)
class EmpiricalReport:
    Q: float
    M: float
    max_ratio: float
    delta: float
    quotient: float
    seed: int
    trials: int
    eps: float = 0.1


def empirical_ratio(Q: float, M: float, trials: int, seed: int, eps: float = 0.1) -> EmpiricalReport:
    """max over random coefficient vectors of T(Q, M)/||a||^2, and its quotient
    by Delta(Q, M, eps).  Even trials use uniform phases, odd trials random signs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    inst = build_instance("B1", Q, M)
    X = inst.matrix
    rng = np.random.default_rng(seed)
    best = 0.0
    n = X.shape[1]
    for k in range(trials):
        if k % 2 == 0:
            a = np.exp(2j * math.pi * rng.random(n))
        else:
            a = rng.choice([-1.0, 1.0], size=n).astype(complex)
        if n == 0:
            continue
        T = float(np.sum(np.abs(X @ a) ** 2))
        best = max(best, T / float(np.sum(np.abs(a) ** 2)))
    d = delta_bound(Q, M, eps)
    return EmpiricalReport(Q, M, best, d, best / d, seed, trials, eps)


def write_norm_csv(reports, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["which", "Q", "M", "value", "method"])
        for r in reports:
            w.writerow([r.which, r.Q, r.M, repr(r.value), r.method])


def write_empirical_csv(reports, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["Q", "M", "max_ratio", "delta", "quotient", "seed", "trials"])
        for r in reports:
            w.writerow([r.Q, r.M, repr(r.max_ratio), repr(r.delta), repr(r.quotient), r.seed, r.trials])
