"""Smallest-eigenvalue engines.

Three independent routes to ``lambda_min``:

* Sturm-sequence bisection on a :class:`SymTridiag` (any Jacobi matrix);
* bisection on the sign of ``P_n``, the characteristic polynomial generated
  by the three-term recurrence of ``C_n``;
* for ``beta = 1``, the smallest zero of
  ``phi_n(z) = 2^{-n} (U_n(z) + sqrt(c) U_{n-1}(z))`` with the change of
  variable ``lambda = 1 + 1/c + 2 z / sqrt(c)``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, ConvergenceError, ParameterError, VerificationError
from .matrices import SymTridiag
from .meixner import MeixnerParams

DEFAULT_TOL = 1e-12
MAX_BISECTIONS = 200
SCAN_POINTS = 1024
# Relative tolerances are measured against max(|lo|, |hi|, _ABS_FLOOR * scale)
# so a (near-)zero eigenvalue still terminates.
_ABS_FLOOR = 1e-6
_MARGIN = 1e-3


@dataclass(frozen=True)
class EigenEstimate:
    value: float
    bracket_width: float
    iterations: int


@dataclass(frozen=True)
class ChebRoot:
    n: int
    tau: float
    epsilon_n: float
    iterations: int = 0
    bracket_width: float = 0.0


def _check_tol(tol):
    if not tol > 0:
        raise ParameterError(f"tol must be positive, got {tol!r}")


def sturm_count(T: SymTridiag, x: float) -> int:
    """Number of eigenvalues of ``T`` strictly below ``x`` (negative LDL^T pivots)."""
    d, e2 = T.diag.tolist(), (T.off * T.off).tolist()
    # pivots smaller than this are pushed to -pivmin so e^2/q stays finite
    pivmin = sys.float_info.min * max(1.0, max(e2, default=0.0))
    count = 0
    q = d[0] - x
    for i in range(T.n):
        if i:
            q = d[i] - x - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            count += 1
    return count


def gershgorin(T: SymTridiag) -> tuple[float, float]:
    r = np.zeros(T.n)
    r[:-1] += np.abs(T.off)
    r[1:] += np.abs(T.off)
    return float(np.min(T.diag - r)), float(np.max(T.diag + r))


def _bisect(pred_below, lo, hi, tol, scale):
    """Shrink ``[lo, hi]`` keeping ``pred_below(lo)`` true and ``pred_below(hi)`` false."""
    floor = _ABS_FLOOR * scale
    it = 0
    while hi - lo > tol * max(abs(lo), abs(hi), floor):
        if it >= MAX_BISECTIONS:
            raise ConvergenceError(
                f"bisection stopped at width {hi - lo:.3e} after {it} steps (tol={tol:g})"
            )
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:  # floating resolution reached
            break
        if pred_below(mid):
            lo = mid
        else:
            hi = mid
        it += 1
    return lo, hi, it


def smallest_eigenvalue(T: SymTridiag, tol: float = DEFAULT_TOL) -> EigenEstimate:
    """Smallest eigenvalue of ``T`` by Sturm bisection inside the Gershgorin interval."""
    _check_tol(tol)
    lo, hi = gershgorin(T)
    if lo == hi:  # scalar or diagonal-constant case
        return EigenEstimate(lo, 0.0, 0)
    scale = max(abs(lo), abs(hi))
    # the Gershgorin end can coincide with an eigenvalue (e.g. 2x2, equal diagonal)
    lo -= _MARGIN * (hi - lo)
    lo, hi, it = _bisect(lambda x: sturm_count(T, x) == 0, lo, hi, tol, scale)
    return EigenEstimate(0.5 * (lo + hi), hi - lo, it)


def _recurrence_coeffs(params: MeixnerParams, n: int):
    """Diagonal shifts ``b_k`` and products ``a_k`` of ``P_k = (x - b_k) P_{k-1} - a_k P_{k-2}``."""
    c, beta = params.c, params.beta
    k = np.arange(1, n + 1, dtype=float)
    b = (beta + k - 1) / (k * c) + 1.0
    b[0] = beta / c
    a = np.zeros(n)
    a[1:] = (beta + k[1:] - 2) / ((k[1:] - 1) * c)
    return b, a


def _charpoly_eval(b, a, x):
    """Sign of ``P_n(x)`` and the number of sign changes in ``P_0(x), ..., P_n(x)``.

    Values are renormalised every step; only signs are meaningful afterwards.
    """
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    last_sign = np.ones_like(x)
    changes = np.zeros(x.shape, dtype=int)
    for k in range(b.size):
        nxt = (x - b[k]) * cur - a[k] * prev
        prev, cur = cur, nxt
        m = np.maximum(np.abs(prev), np.abs(cur))
        m[m == 0.0] = 1.0
        prev, cur = prev / m, cur / m
        s = np.sign(cur)
        flip = (s != 0) & (s != last_sign)
        changes += flip
        last_sign = np.where(s != 0, s, last_sign)
    return np.sign(cur), changes


def _charpoly_sign(b, a, x: float) -> float:
    """Scalar sign of ``P_n(x)``; avoids array overhead inside the bisection loop."""
    prev, cur = 0.0, 1.0
    for bk, ak in zip(b.tolist(), a.tolist()):
        prev, cur = cur, (x - bk) * cur - ak * prev
        m = max(abs(prev), abs(cur))
        if m > 1e100 or 0.0 < m < 1e-100:
            prev, cur = prev / m, cur / m
    return math.copysign(1.0, cur) if cur else 0.0


def charpoly_smallest_zero(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL) -> EigenEstimate:
    """Smallest zero of the ``n``-th polynomial of the recurrence

        P_0 = 1,  P_1 = x - beta/c,
        P_k = (x - (beta+k-1)/(k c) - 1) P_{k-1} - (beta+k-2)/((k-1) c) P_{k-2}.

    A 1024-point scan over ``[max(0, lower Gershgorin), upper Gershgorin]``
    locates the first cell containing a zero; cells holding more than one zero
    (detected by the sign-change count of the sequence) are rescanned. The
    zero is then bisected on the sign of ``P_n``.
    """
    _check_tol(tol)
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if n == 1:
        return EigenEstimate(params.beta / params.c, 0.0, 0)
    b, a = _recurrence_coeffs(params, n)
    off = np.sqrt(a[1:])
    r = np.zeros(n)
    r[:-1] += off
    r[1:] += off
    lo, hi = float(np.min(b - r)), float(np.max(b + r))
    lo = max(0.0, lo - _MARGIN * (hi - lo))
    scale = hi

    for _ in range(8):
        xs = np.linspace(lo, hi, SCAN_POINTS + 1)
        _, changes = _charpoly_eval(b, a, xs)
        below = n - changes  # zeros <= x
        idx = np.flatnonzero(below >= 1)
        if idx.size == 0 or idx[0] == 0:
            raise BracketError(f"no sign change of P_{n} found on [{lo:g}, {hi:g}]")
        i = int(idx[0])
        lo, hi = float(xs[i - 1]), float(xs[i])
        if below[i] == 1:
            break
    else:
        raise BracketError(f"could not isolate the smallest zero of P_{n}")

    sign_below = (-1.0) ** n

    def pred_below(x):
        return _charpoly_sign(b, a, x) == sign_below

    lo, hi, it = _bisect(pred_below, lo, hi, tol, scale)
    return EigenEstimate(0.5 * (lo + hi), hi - lo, it)


def cheb_phi(n: int, c: float, z: float) -> float:
    """``phi_n(z) = 2^{-n} (U_n(z) + sqrt(c) U_{n-1}(z))``.

    Runs the recurrence on ``v_m = 2^{-m} U_m``, i.e.
    ``v_{m+1} = z v_m - v_{m-1} / 4``; outside ``[-1, 1]`` the running pair is
    rescaled by powers of two to keep it finite.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    if not 0.0 < c < 1.0:
        raise ParameterError(f"c must satisfy 0 < c < 1, got c={c!r}")
    v_prev, v = 1.0, float(z)  # v_0, v_1
    exp2 = 0
    for _ in range(1, int(n)):
        v_prev, v = v, z * v - 0.25 * v_prev
        m = max(abs(v), abs(v_prev))
        if m > 2.0**500:
            _, e = math.frexp(m)
            v, v_prev = math.ldexp(v, -e), math.ldexp(v_prev, -e)
            exp2 += e
    phi = v + 0.5 * math.sqrt(c) * v_prev
    return math.ldexp(phi, exp2) if exp2 else phi


def cheb_smallest_root(n: int, c: float, tol: float = DEFAULT_TOL) -> ChebRoot:
    """Smallest zero ``tau = -1 + epsilon_n`` of ``phi_n``, for ``n >= 2``.

    The root is isolated in ``epsilon_n`` in
    ``(1/(2n(n+1)), 2 sin^2(pi/(2n)))``: below it lies no zero of ``phi_n``
    and its upper end is the smallest zero of ``U_{n-1}``. Bisection runs on
    ``epsilon_n`` directly with relative tolerance ``tol``.
    """
    _check_tol(tol)
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    eps_lower = 1.0 / (n * (n + 1))
    eps_upper = 2.0 * math.sin(math.pi / (2 * n)) ** 2
    lo, hi = 0.5 * eps_lower, eps_upper
    sign_below = (-1.0) ** n

    def sgn(eps):
        return math.copysign(1.0, cheb_phi(n, c, -1.0 + eps))

    if sgn(lo) != sign_below or sgn(hi) == sign_below:
        raise BracketError(f"phi_{n} does not change sign on the expected bracket")
    lo, hi, it = _bisect(lambda e: sgn(e) == sign_below, lo, hi, tol, 0.0)
    eps = 0.5 * (lo + hi)
    if not eps_lower < eps < eps_upper:
        raise VerificationError(
            f"epsilon_{n}={eps!r} outside ({eps_lower!r}, {eps_upper!r})"
        )
    return ChebRoot(n, -1.0 + eps, eps, it, hi - lo)
