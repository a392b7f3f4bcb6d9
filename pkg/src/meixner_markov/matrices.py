"""Matrices linking the Markov-Bernstein constant to Jacobi-matrix eigenvalues.

``A_n`` is the lower-triangular matrix with entries ``alpha_{j-1}/alpha_i``
(1-based, ``j <= i``), where ``alpha_k = c^{-k/2} sqrt((beta)_k / k!)``.
``B_n = (A_n A_n^T)^{-1}`` and ``C_n = (A_n^T A_n)^{-1}`` are tridiagonal.
They are stored here with positive off-diagonals; flipping the sign of the
off-diagonal is a diagonal similarity, so the spectrum is unchanged.

The ``alpha_k`` themselves grow like ``c^{-k/2}`` and are never formed; only
the consecutive ratios ``alpha_k / alpha_{k-1}`` are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .meixner import MeixnerParams

DENSE_A_MAX = 64
FACTORIZATION_MAX = 16


def _readonly(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SymTridiag:
    """Symmetric tridiagonal matrix held as its diagonal and off-diagonal."""

    diag: np.ndarray
    off: np.ndarray

    def __post_init__(self):
        d, e = _readonly(self.diag).reshape(-1), _readonly(self.off).reshape(-1)
        if d.size < 1:
            raise ParameterError("a tridiagonal matrix needs at least one row")
        if e.size != d.size - 1:
            raise ParameterError(f"off-diagonal length {e.size} does not match n={d.size}")
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "off", e)

    @property
    def n(self) -> int:
        return self.diag.size

    def flipped(self) -> "SymTridiag":
        return SymTridiag(self.diag, -self.off)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    def __eq__(self, other):
        if not isinstance(other, SymTridiag):
            return NotImplemented
        return np.array_equal(self.diag, other.diag) and np.array_equal(self.off, other.off)

    def __repr__(self):
        return f"SymTridiag(diag={self.diag.tolist()}, off={self.off.tolist()})"


def _check_n(n, limit=None):
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if limit is not None and n > limit:
        raise ParameterError(f"n={n} exceeds the dense-matrix limit {limit}")
    return int(n)


def alpha_ratio(params: MeixnerParams, k: int) -> float:
    """``alpha_k / alpha_{k-1} = sqrt((beta + k - 1) / (k c))`` for ``k >= 1``."""
    if int(k) != k or k < 1:
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    return math.sqrt((params.beta + k - 1) / (k * params.c))


def _ratio_sq(params: MeixnerParams, ks: np.ndarray) -> np.ndarray:
    return (params.beta + ks - 1) / (ks * params.c)


def build_B(params: MeixnerParams, n: int) -> SymTridiag:
    """Jacobi form of ``(A_n A_n^T)^{-1}``."""
    n = _check_n(n)
    ks = np.arange(1, n + 1, dtype=float)
    r2 = _ratio_sq(params, ks)
    diag = r2 + 1.0
    diag[-1] = r2[-1]
    off = np.sqrt(r2[1:])
    return SymTridiag(diag, off)


def build_C(params: MeixnerParams, n: int) -> SymTridiag:
    """Jacobi form of ``(A_n^T A_n)^{-1}``."""
    n = _check_n(n)
    ks = np.arange(1, n + 1, dtype=float)
    r2 = _ratio_sq(params, ks)
    diag = r2 + 1.0
    diag[0] = r2[0]
    off = np.sqrt(r2[:-1])
    return SymTridiag(diag, off)


def build_D(c: float, n: int) -> SymTridiag:
    """``C_n`` at ``beta = 1``: diagonal ``1/c, 1/c + 1, ...``, off-diagonal ``1/sqrt(c)``."""
    return build_C(MeixnerParams(c, 1.0), n)


def build_A_dense(params: MeixnerParams, n: int) -> np.ndarray:
    """Dense ``A_n``; entry ``(i, j)`` is ``alpha_{j-1}/alpha_i`` for ``j <= i``.

    Gated to ``n <= 64``; meant for cross-checks only.
    """
    n = _check_n(n, DENSE_A_MAX)
    inv = np.array([1.0 / alpha_ratio(params, k) for k in range(1, n + 1)])
    A = np.zeros((n, n))
    for i in range(n):
        # alpha_{j-1}/alpha_i = prod_{k=j}^{i} alpha_{k-1}/alpha_k (0-based rows)
        acc = 1.0
        for j in range(i, -1, -1):
            acc *= inv[j]
            A[i, j] = acc
    return A


@dataclass
class FactorizationCheck:
    ok: bool
    discrepancies: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def verify_factorization(params: MeixnerParams, n: int, tol: float = 1e-10) -> FactorizationCheck:
    """Rebuild ``A_n`` from its ``diag * T_n * diag`` factorization and compare.

    Also inverts ``A_n A_n^T`` and ``A_n^T A_n`` densely and compares them with
    the sign-flipped ``build_B`` / ``build_C``. Errors are relative to the
    largest entry of the reference matrix.
    """
    n = _check_n(n, FACTORIZATION_MAX)
    # alpha_0 .. alpha_n are safe to form at this size
    alphas = np.cumprod([1.0] + [alpha_ratio(params, k) for k in range(1, n + 1)])
    T = np.tril(np.ones((n, n)))
    A_fact = np.diag(1.0 / alphas[1:]) @ T @ np.diag(alphas[:-1])
    A = build_A_dense(params, n)

    def rel(X, Y):
        return float(np.max(np.abs(X - Y)) / max(np.max(np.abs(Y)), 1e-300))

    errs = {
        "A": rel(A, A_fact),
        "B": rel(np.linalg.inv(A @ A.T), build_B(params, n).flipped().to_dense()),
        "C": rel(np.linalg.inv(A.T @ A), build_C(params, n).flipped().to_dense()),
    }
    bad = {k: v for k, v in errs.items() if not v <= tol}
    return FactorizationCheck(not bad, bad)
