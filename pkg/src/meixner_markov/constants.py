"""The sharp constant gamma_n(c, beta) and its closed-form bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .eigen import (
    DEFAULT_TOL,
    charpoly_smallest_zero,
    cheb_smallest_root,
    smallest_eigenvalue,
)
from .errors import ParameterError
from .matrices import build_B, build_C
from .meixner import MeixnerParams


class Method(str, enum.Enum):
    STURM_B = "sturm_B"
    STURM_C = "sturm_C"
    CHARPOLY = "charpoly"
    CHEBYSHEV = "chebyshev"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class GammaResult:
    n: int
    params: MeixnerParams
    lambda_min: float
    gamma: float
    method: Method
    iterations: int = 0
    bracket_width: float = 0.0
    tol: float = DEFAULT_TOL

    @property
    def mu_max(self) -> float:
        """Largest eigenvalue of ``A_n A_n^T``."""
        return 1.0 / self.lambda_min

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "c": self.params.c,
            "beta": self.params.beta,
            "lambda_min": self.lambda_min,
            "gamma": self.gamma,
            "method": str(self.method),
        }


@dataclass(frozen=True)
class BoundsReport:
    n: int
    c: float
    lower: float
    upper: float
    epsilon_lower: float
    epsilon_upper: float

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "lower": self.lower,
            "upper": self.upper,
            "epsilon_lower": self.epsilon_lower,
            "epsilon_upper": self.epsilon_upper,
        }


def default_method(params: MeixnerParams, n: int) -> Method:
    return Method.CHEBYSHEV if params.beta == 1.0 and n >= 2 else Method.STURM_C


def lambda_from_epsilon(c: float, eps: float) -> float:
    """``1 + 1/c + 2 tau/sqrt(c)`` rewritten as ``(1/sqrt(c) - 1)^2 + 2 eps/sqrt(c)``."""
    s = math.sqrt(c)
    return (1.0 / s - 1.0) ** 2 + 2.0 * eps / s


def gamma_from_lambda(c: float, lam: float) -> float:
    return (1.0 / c - 1.0) / math.sqrt(lam)


def gamma_n(
    params: MeixnerParams,
    n: int,
    method: Method | str | None = None,
    tol: float = DEFAULT_TOL,
) -> GammaResult:
    """Sharp constant in ``||Delta p|| <= gamma_n ||p||`` over polynomials of degree <= n.

    ``gamma_n = (1/c - 1) / sqrt(lambda_min)`` where ``lambda_min`` is the
    smallest eigenvalue of ``B_n`` (equivalently ``C_n``). ``method`` picks the
    eigenvalue engine; the default is ``chebyshev`` for ``beta = 1, n >= 2``
    and ``sturm_C`` otherwise.
    """
    if int(n) != n or n < 1:
        raise ParameterError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    method = default_method(params, n) if method is None else Method(method)
    if method is Method.CHEBYSHEV:
        if params.beta != 1.0:
            raise ParameterError(f"method 'chebyshev' requires beta=1, got beta={params.beta!r}")
        if n == 1:
            # phi_1(z) = z + sqrt(c)/2 so lambda = 1/c
            lam, it, width = 1.0 / params.c, 0, 0.0
        else:
            root = cheb_smallest_root(n, params.c, tol)
            lam = lambda_from_epsilon(params.c, root.epsilon_n)
            it, width = root.iterations, 2.0 * root.bracket_width / math.sqrt(params.c)
    else:
        if method is Method.STURM_B:
            est = smallest_eigenvalue(build_B(params, n), tol)
        elif method is Method.STURM_C:
            est = smallest_eigenvalue(build_C(params, n), tol)
        else:
            est = charpoly_smallest_zero(params, n, tol)
        lam, it, width = est.value, est.iterations, est.bracket_width
    return GammaResult(n, params, lam, gamma_from_lambda(params.c, lam), method, it, width, tol)


def available_methods(params: MeixnerParams) -> list[Method]:
    methods = [Method.STURM_B, Method.STURM_C, Method.CHARPOLY]
    if params.beta == 1.0:
        methods.append(Method.CHEBYSHEV)
    return methods


def sequence_bound(params: MeixnerParams) -> float:
    """Bound on ``||Delta f|| / ||f||`` over all of ``l_2(c, beta)``, hence on every gamma_n."""
    if params.beta >= 1.0:
        return 1.0 + 1.0 / math.sqrt(params.c)
    return 1.0 + 1.0 / math.sqrt(params.beta * params.c)


def epsilon_bounds(n: int) -> tuple[float, float]:
    """``(1/(n(n+1)), 2 sin^2(pi/(2n)))``, the bracket on ``1 + tau`` for ``n >= 2``."""
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n!r}")
    return 1.0 / (n * (n + 1)), 2.0 * math.sin(math.pi / (2 * n)) ** 2


def bounds_beta1(c: float, n: int) -> BoundsReport:
    """Two-sided closed-form estimates for ``gamma_n(c, 1)``, ``n >= 2``."""
    MeixnerParams(c, 1.0)
    eps_lo, eps_hi = epsilon_bounds(n)
    s = math.sqrt(c)
    limit = 1.0 + 1.0 / s
    k = 2.0 * s / (1.0 - s) ** 2
    # 2 sin^2(pi/2n) * 2 sqrt(c)/(1-sqrt(c))^2 == 4 sqrt(c) sin^2(pi/2n)/(1-sqrt(c))^2
    lower = limit / math.sqrt(1.0 + k * eps_hi)
    upper = limit / math.sqrt(1.0 + k * eps_lo)
    return BoundsReport(int(n), float(c), lower, upper, eps_lo, eps_hi)
