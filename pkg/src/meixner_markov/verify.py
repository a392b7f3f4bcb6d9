"""Independent checks of the eigenvalue route to gamma_n.

The Gram-matrix oracle never touches the tridiagonal machinery: it evaluates
``Delta p_m`` pointwise from the hypergeometric sum, forms the Gram matrix by
truncated summation and diagonalises it with cyclic Jacobi rotations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import sequence_bound
from .eigen import DEFAULT_TOL, smallest_eigenvalue
from .errors import ConvergenceError, ParameterError, VerificationError
from .matrices import build_B
from .meixner import (
    MeixnerParams,
    forward_difference,
    inner_product,
    log_weights,
    orthonormal_meixner,
)

ORACLE_MAX_N = 12
JACOBI_THRESHOLD = 1e-14


@dataclass
class OracleReport:
    n: int
    params: MeixnerParams
    gram: np.ndarray
    gamma_oracle: float
    max_tail_bound: float
    eigenvalues: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.gram - self.gram.T)))


@dataclass
class MonotoneReport:
    c: float
    n: int
    beta_grid: list
    lambda_values: list
    gamma_values: list
    chain_ok: list

    def rows(self):
        for b, lam, g, ok in zip(self.beta_grid, self.lambda_values, self.gamma_values, self.chain_ok):
            yield {"n": self.n, "c": self.c, "beta": b, "lambda_min": lam, "gamma": g, "chain_ok": ok}


def jacobi_eigenvalues(S, threshold: float = JACOBI_THRESHOLD, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations, ascending.

    Sweeps stop once the off-diagonal Frobenius norm falls below
    ``threshold`` times the Frobenius norm of the input.
    """
    A = np.array(S, dtype=float, copy=True)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ParameterError(f"expected a square matrix, got shape {A.shape}")
    scale = np.linalg.norm(A)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(A))
    for _ in range(max_sweeps):
        off = np.linalg.norm(A[~np.eye(n, dtype=bool)])
        if off <= threshold * scale:
            return np.sort(np.diag(A))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                cs = 1.0 / math.hypot(t, 1.0)
                sn = t * cs
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = cs * rp - sn * rq, sn * rp + cs * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = cs * cp - sn * cq, sn * cp + cs * cq
    raise ConvergenceError(f"Jacobi rotations did not converge in {max_sweeps} sweeps")


def _delta_p(params, m):
    return lambda x: forward_difference(lambda t: orthonormal_meixner(params, m, t), x)


def oracle_gamma(params: MeixnerParams, n: int, trunc_tol: float = 1e-14) -> OracleReport:
    """Brute-force ``gamma_n`` as ``sqrt(lambda_max)`` of ``[<Delta p_i, Delta p_j>]_{i,j=1..n}``.

    ``p_0`` drops out because ``Delta p_0 = 0``, and the ``p_i`` are
    orthonormal, so the Rayleigh quotient of this Gram matrix is exactly
    ``||Delta f||^2 / ||f||^2``.
    """
    if int(n) != n or not 1 <= n <= ORACLE_MAX_N:
        raise ParameterError(f"oracle requires 1 <= n <= {ORACLE_MAX_N}, got n={n!r}")
    n = int(n)
    diffs = [_delta_p(params, m) for m in range(1, n + 1)]
    gram = np.empty((n, n))
    max_tail = 0.0
    for i in range(n):
        for j in range(i, n):
            s = inner_product(params, diffs[i], diffs[j], tol=trunc_tol)
            gram[i, j] = gram[j, i] = s.value
            max_tail = max(max_tail, s.tail_bound)
    eig = jacobi_eigenvalues(gram)
    return OracleReport(n, params, gram, math.sqrt(max(eig[-1], 0.0)), max_tail, eig)


def extremal_sequence_ratio(c: float, n: int, check: bool = True, rtol: float = 1e-10) -> float:
    """``||Delta f|| / ||f||`` in ``l_2(c, 1)`` for ``f(k) = (-1)^k c^{-k/2}``, ``k <= n``, else 0.

    Returns the closed form ``sqrt((n (1 + 1/sqrt(c))^2 + 1) / (n + 1))``. With
    ``check`` the ratio is also summed directly from the weights and the
    sequence (in log-magnitude form, since ``c^{-k/2}`` overflows) and a
    mismatch beyond ``rtol`` raises :class:`VerificationError`.
    """
    params = MeixnerParams(c, 1.0)
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    closed = math.sqrt((n * (1.0 + 1.0 / math.sqrt(c)) ** 2 + 1.0) / (n + 1))
    if not check:
        return closed

    k = np.arange(n + 2, dtype=float)
    half_logw = 0.5 * log_weights(params, n + 2)
    log_f = -0.5 * k * math.log(c)
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    sign[n + 1] = 0.0  # f vanishes beyond n
    # sqrt(w_k) f(k) and sqrt(w_k) f(k+1), each formed from its own logarithm
    f_at_k = sign * np.exp(half_logw + log_f)
    f_next = sign[1:] * np.exp(half_logw[:-1] + log_f[1:])
    norm_f = math.fsum(f_at_k**2)
    norm_df = math.fsum((f_next - f_at_k[:-1]) ** 2)
    direct = math.sqrt(norm_df / norm_f)
    if abs(direct - closed) > rtol * closed:
        raise VerificationError(f"extremal ratio: closed form {closed!r} vs direct sum {direct!r}")
    return closed


def chain_condition_check(params: MeixnerParams, n: int) -> list[bool]:
    """Per-``k`` truth of the 1/4-chain-sequence condition for ``dB_n/dbeta``, ``k = 1..n-1``.

    The ratio form ``b'_{k,k+1}^2 / (b'_{k,k} b'_{k+1,k+1}) < 1/4`` is evaluated
    from the derivative entries and compared against the equivalent
    ``beta + k (1 - c) > 0``; a disagreement raises :class:`VerificationError`.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    c, beta = params.c, params.beta
    out = []
    for k in range(1, int(n)):
        d_k = 1.0 / (k * c)
        d_k1 = 1.0 / ((k + 1) * c)
        e_k = 1.0 / (2.0 * math.sqrt((k + 1) * (k + beta) * c))
        by_ratio = e_k * e_k / (d_k * d_k1) < 0.25
        by_linear = beta + k * (1.0 - c) > 0.0
        if by_ratio != by_linear:
            raise VerificationError(
                f"chain condition forms disagree at k={k}, c={c!r}, beta={beta!r}"
            )
        out.append(by_ratio)
    return out


def monotonicity_scan(c: float, n: int, beta_grid, tol: float = DEFAULT_TOL) -> MonotoneReport:
    """``lambda_min(B_n(c, beta))`` along an increasing ``beta`` grid, checked for strict increase."""
    grid = [float(b) for b in beta_grid]
    if not grid:
        raise ParameterError("beta grid is empty")
    if any(b <= 0 for b in grid) or any(b1 >= b2 for b1, b2 in zip(grid, grid[1:])):
        raise ParameterError(f"beta grid must be strictly increasing and positive: {grid}")
    lams, gammas, chain = [], [], []
    for b in grid:
        params = MeixnerParams(c, b)
        lam = smallest_eigenvalue(build_B(params, n), tol).value
        lams.append(lam)
        gammas.append((1.0 / params.c - 1.0) / math.sqrt(lam))
        chain.append(all(chain_condition_check(params, n)))
    for i in range(len(grid) - 1):
        step = lams[i + 1] - lams[i]
        slack = tol * max(abs(lams[i]), abs(lams[i + 1]))
        if step <= -slack or (chain[i] and chain[i + 1] and step <= 0.0):
            raise VerificationError(
                f"lambda_min not increasing between beta={grid[i]!r} ({lams[i]!r}) "
                f"and beta={grid[i + 1]!r} ({lams[i + 1]!r})"
            )
    return MonotoneReport(float(c), int(n), grid, lams, gammas, chain)


def sharpness_holds(c: float, n: int) -> bool:
    """Extremal ratio sits strictly between ``sqrt(n/(n+1)) (1 + 1/sqrt(c))`` and the ceiling."""
    r = extremal_sequence_ratio(c, n)
    limit = sequence_bound(MeixnerParams(c, 1.0))
    return math.sqrt(n / (n + 1)) * limit < r <= limit
