"""Meixner weight, Meixner polynomials and the truncated Meixner inner product.

For ``0 < c < 1`` and ``beta > 0`` the Meixner inner product on functions of
the nonnegative integers is

    <f, g> = sum_{k>=0} w_k f(k) g(k),    w_k = (beta)_k c^k / k!

and the Meixner polynomials ``M_n(x; beta, c) = 2F1(-n, -x; beta | 1 - 1/c)``
are orthogonal with respect to it.  Everything here is plain double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, ParameterError

#: Orders above this use log-space for the orthonormal scale factor.
LOG_SCALE_THRESHOLD = 64
#: Safety factor applied to the geometric tail majorant.
TAIL_SAFETY = 4.0
DEFAULT_MAX_TERMS = 100_000
_WINDOW = 4


@dataclass(frozen=True)
class MeixnerParams:
    """The parameter pair ``(c, beta)`` with ``0 < c < 1`` and ``beta > 0``."""

    c: float
    beta: float

    def __post_init__(self):
        c, beta = float(self.c), float(self.beta)
        if not math.isfinite(c) or not 0.0 < c < 1.0:
            raise ParameterError(f"c must satisfy 0 < c < 1, got c={self.c!r}")
        if not math.isfinite(beta) or beta <= 0.0:
            raise ParameterError(f"beta must satisfy beta > 0, got beta={self.beta!r}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "beta", beta)

    @property
    def z(self) -> float:
        """Hypergeometric argument ``1 - 1/c`` (always negative)."""
        return 1.0 - 1.0 / self.c


@dataclass(frozen=True)
class TruncatedSum:
    value: float
    terms_used: int
    tail_bound: float


def _check_index(k, name="k"):
    if int(k) != k or k < 0:
        raise ParameterError(f"{name} must be a nonnegative integer, got {k!r}")
    return int(k)


def pochhammer(beta: float, k: int) -> float:
    """Rising factorial ``beta (beta+1) ... (beta+k-1)``, with ``(beta)_0 = 1``.

    Raises OverflowError when the product is not representable.
    """
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta!r}")
    k = _check_index(k)
    out = 1.0
    for j in range(k):
        out *= beta + j
        if math.isinf(out):
            raise OverflowError(f"({beta})_{k} overflows double precision")
    return out


def weight(params: MeixnerParams, k: int) -> float:
    """Meixner weight ``w_k = (beta)_k c^k / k!`` via the running ratio."""
    k = _check_index(k)
    w = 1.0
    for j in range(1, k + 1):
        w *= params.c * (params.beta + j - 1) / j
    return w


def log_weights(params: MeixnerParams, count: int) -> np.ndarray:
    """``log w_k`` for ``k = 0 .. count-1``."""
    j = np.arange(1, count, dtype=float)
    steps = np.log(params.c) + np.log(params.beta + j - 1) - np.log(j)
    return np.concatenate(([0.0], np.cumsum(steps)))


def meixner_poly(params: MeixnerParams, n: int, x):
    """Evaluate ``M_n(x; beta, c)`` by its terminating hypergeometric sum.

    ``x`` may be a scalar or an array; the result has the same shape.
    """
    n = _check_index(n, "n")
    x = np.asarray(x, dtype=float)
    z = params.z
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(n):
        # t_{k+1} / t_k = (k - n)(k - x) z / ((beta + k)(k + 1))
        term = term * ((k - n) * (k - x) * z / ((params.beta + k) * (k + 1)))
        total = total + term
    return total if total.ndim else float(total)


def orthonormal_scale(params: MeixnerParams, m: int) -> float:
    """Factor ``(1-c)^{beta/2} c^{m/2} sqrt((beta)_m / m!)`` turning ``M_m`` into ``p_m``."""
    m = _check_index(m, "m")
    c, beta = params.c, params.beta
    if m > LOG_SCALE_THRESHOLD:
        j = np.arange(1, m + 1, dtype=float)
        log_s = 0.5 * beta * math.log1p(-c) + 0.5 * float(
            np.sum(np.log(c) + np.log(beta + j - 1) - np.log(j))
        )
        return math.exp(log_s)
    s = (1.0 - c) ** (0.5 * beta)
    for j in range(1, m + 1):
        s *= math.sqrt(c * (beta + j - 1) / j)
    return s


def orthonormal_meixner(params: MeixnerParams, m: int, x):
    """Orthonormal Meixner polynomial ``p_m(x) = scale_m * M_m(x; beta, c)``."""
    return orthonormal_scale(params, m) * meixner_poly(params, m, x)


def forward_difference(f: Callable, x):
    """``f(x + 1) - f(x)``."""
    return f(x + 1) - f(x)


def inner_product(
    params: MeixnerParams,
    f: Callable,
    g: Callable,
    tol: float = 1e-14,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> TruncatedSum:
    """Truncated Meixner inner product ``sum_k w_k f(k) g(k)``.

    ``f`` and ``g`` are called with an integer-valued float array of nodes
    and must broadcast over it (a function returning a scalar is fine).
    The product ``f g`` is assumed to grow at most polynomially; that is the
    caller's responsibility.

    Summation stops at the first ``K`` where the running maximum of the last
    few term magnitudes has stopped increasing and the geometric majorant
    ``|t_K| * c/(1-c) * TAIL_SAFETY`` is below ``tol``.
    """
    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol!r}")
    if max_terms < 2 * _WINDOW:
        raise ParameterError(f"max_terms must be at least {2 * _WINDOW}, got {max_terms!r}")
    ratio = params.c / (1.0 - params.c) * TAIL_SAFETY
    count = min(256, max_terms)
    while True:
        ks = np.arange(count, dtype=float)
        fk = np.broadcast_to(np.asarray(f(ks), dtype=float), ks.shape)
        gk = np.broadcast_to(np.asarray(g(ks), dtype=float), ks.shape)
        with np.errstate(under="ignore"):
            terms = np.exp(log_weights(params, count)) * fk * gk
        mags = np.abs(terms)
        # envelope over a short window so an isolated near-root of f*g
        # cannot fake convergence
        env = np.lib.stride_tricks.sliding_window_view(mags, _WINDOW).max(axis=1)
        tail = env * ratio
        ok = (env[1:] <= env[:-1]) & (tail[1:] < tol)
        hits = np.flatnonzero(ok)
        if hits.size:
            K = int(hits[0]) + _WINDOW  # index of the last term in the window
            return TruncatedSum(float(math.fsum(terms[: K + 1])), K + 1, float(tail[hits[0] + 1]))
        if count >= max_terms:
            raise ConvergenceError(
                f"inner product did not meet tol={tol:g} within {max_terms} terms"
            )
        count = min(2 * count, max_terms)


def norm(params: MeixnerParams, f: Callable, tol: float = 1e-14) -> float:
    return math.sqrt(inner_product(params, f, f, tol=tol).value)
