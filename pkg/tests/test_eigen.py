import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meixner_markov.constants import lambda_from_epsilon
from meixner_markov.eigen import (
    charpoly_smallest_zero,
    cheb_phi,
    cheb_smallest_root,
    gershgorin,
    smallest_eigenvalue,
    sturm_count,
)
from meixner_markov.errors import ParameterError
from meixner_markov.matrices import SymTridiag, build_B, build_C, build_D
from meixner_markov.meixner import MeixnerParams

from frozen import LAMBDA_2, TAU_2

C_GRID = [0.1, 0.25, 0.5, 0.75, 0.9]
BETA_GRID = [0.3, 0.7, 1.0, 1.5, 2.0, 5.0]
N_GRID = list(range(1, 21)) + [50, 100]
T2 = SymTridiag([2.0, 2.0], [1.0])


def chebyshev_u(m, z):
    # trigonometric form, valid on (-1, 1)
    th = math.acos(z)
    return math.sin((m + 1) * th) / math.sin(th)


def test_sturm_count_examples():
    assert sturm_count(T2, 0.0) == 0
    assert sturm_count(T2, 2.0) == 1
    assert sturm_count(T2, 10.0) == 2


def test_sturm_count_handles_zero_pivot():
    # x = d_1 gives a zero first pivot, yet x is not an eigenvalue
    T = SymTridiag([1.0, 2.0, 0.0], [1.0, 1.0])
    ev = np.linalg.eigvalsh(T.to_dense())
    assert np.min(np.abs(ev - 1.0)) > 0.1
    assert sturm_count(T, 1.0) == int(np.sum(ev < 1.0))


@settings(max_examples=50, deadline=None)
@given(
    d=st.lists(st.floats(-5, 5), min_size=1, max_size=12),
    data=st.data(),
)
def test_sturm_count_monotone_and_exact(d, data):
    e = data.draw(st.lists(st.floats(0.05, 3), min_size=len(d) - 1, max_size=len(d) - 1))
    T = SymTridiag(d, e)
    ev = np.linalg.eigvalsh(T.to_dense())
    xs = np.linspace(ev[0] - 1, ev[-1] + 1, 41)
    counts = [sturm_count(T, x) for x in xs]
    assert counts == sorted(counts)
    for x, k in zip(xs, counts):
        if np.min(np.abs(ev - x)) > 1e-8:
            assert k == int(np.sum(ev < x))


def test_smallest_eigenvalue_examples():
    est = smallest_eigenvalue(T2, 1e-12)
    assert abs(est.value - 1.0) < 1e-12
    assert est.bracket_width <= 1e-12 * 3
    assert smallest_eigenvalue(build_C(MeixnerParams(0.5, 1), 1)).value == 2.0


@pytest.mark.parametrize("c", C_GRID)
@pytest.mark.parametrize("n", [2, 3, 7, 30])
def test_smallest_eigenvalue_D_matches_chebyshev(c, n):
    lam = smallest_eigenvalue(build_D(c, n)).value
    root = cheb_smallest_root(n, c)
    ref = (1 / math.sqrt(c) - 1) ** 2 + 2 * root.epsilon_n / math.sqrt(c)
    assert abs(lam - ref) <= 1e-10 * ref
    # and via the untransformed change of variable
    assert abs(lam - (1 + 1 / c + 2 * root.tau / math.sqrt(c))) <= 1e-10 * max(ref, 1)


def test_smallest_eigenvalue_rejects_bad_tol():
    with pytest.raises(ParameterError):
        smallest_eigenvalue(T2, 0.0)


def test_gershgorin_encloses_spectrum():
    T = build_B(MeixnerParams(0.4, 2.2), 15)
    lo, hi = gershgorin(T)
    ev = np.linalg.eigvalsh(T.to_dense())
    assert lo <= ev[0] and ev[-1] <= hi


def test_charpoly_examples():
    p = MeixnerParams(0.3, 1.7)
    assert charpoly_smallest_zero(p, 1).value == 1.7 / 0.3
    a = charpoly_smallest_zero(MeixnerParams(0.5, 1), 6).value
    b = smallest_eigenvalue(build_C(MeixnerParams(0.5, 1), 6)).value
    assert abs(a - b) <= 1e-9 * b
    a = charpoly_smallest_zero(MeixnerParams(0.25, 3), 10).value
    b = smallest_eigenvalue(build_B(MeixnerParams(0.25, 3), 10)).value
    assert abs(a - b) <= 1e-9 * b


def test_charpoly_isolates_clustered_zeros():
    # at n = 200 the bottom of the spectrum is denser than one scan cell
    p = MeixnerParams(0.1, 0.3)
    a = charpoly_smallest_zero(p, 200).value
    ref = np.linalg.eigvalsh(build_C(p, 200).to_dense())[0]
    assert abs(a - ref) <= 1e-9 * ref


def test_charpoly_no_overflow_at_large_n():
    p = MeixnerParams(0.05, 0.5)
    a = charpoly_smallest_zero(p, 400).value
    b = smallest_eigenvalue(build_C(p, 400)).value
    assert abs(a - b) <= 1e-9 * b


@pytest.mark.parametrize("c", C_GRID)
@pytest.mark.parametrize("beta", BETA_GRID)
def test_method_agreement_grid(c, beta):
    p = MeixnerParams(c, beta)
    for n in N_GRID:
        lb = smallest_eigenvalue(build_B(p, n)).value
        lc = smallest_eigenvalue(build_C(p, n)).value
        lp = charpoly_smallest_zero(p, n).value
        assert lb > 0
        assert abs(lb - lc) <= 1e-9 * lc
        assert abs(lp - lc) <= 1e-9 * lc


@pytest.mark.parametrize("c,beta,n", [(0.5, 1, 6), (0.25, 3, 10), (0.9, 0.3, 40), (0.1, 5, 25)])
def test_smallest_eigenvalue_against_dense(c, beta, n):
    p = MeixnerParams(c, beta)
    ref = np.linalg.eigvalsh(build_C(p, n).to_dense())[0]
    assert abs(smallest_eigenvalue(build_C(p, n)).value - ref) <= 1e-10 * ref


# --- Chebyshev form ---------------------------------------------------------

@pytest.mark.parametrize("c", C_GRID)
def test_cheb_phi_closed_forms(c):
    s = math.sqrt(c)
    for z in (-0.9, -0.2, 0.3, 0.77):
        assert cheb_phi(1, c, z) == pytest.approx(z + s / 2, rel=1e-15)
    for n in range(1, 30):
        assert cheb_phi(n, c, 1.0) == pytest.approx(2.0**-n * (n + 1 + n * s), rel=1e-13)
        assert cheb_phi(n, c, -1.0) == pytest.approx((-1) ** n * 2.0**-n * (n + 1 - n * s), rel=1e-13)


@pytest.mark.parametrize("n", [2, 5, 13, 40])
def test_cheb_phi_matches_trigonometric_u(n):
    c = 0.42
    for z in np.linspace(-0.95, 0.95, 9):
        ref = 2.0**-n * (chebyshev_u(n, z) + math.sqrt(c) * chebyshev_u(n - 1, z))
        assert cheb_phi(n, c, z) == pytest.approx(ref, rel=1e-10, abs=1e-12 * 2.0**-n)


def test_cheb_phi_outside_interval_rescaled():
    # far outside [-1, 1] the raw recurrence would overflow before rescaling
    v = cheb_phi(600, 0.5, 3.0)
    # phi_n(z) ~ (z + sqrt(z^2-1))^n / 2^n * (1 + sqrt(c)/(z+sqrt(z^2-1)))...; compare logs
    r = 3.0 + math.sqrt(8.0)
    ref_log = 600 * math.log(r / 2) + math.log((r / (r - 1 / r)) * (1 + math.sqrt(0.5) / r))
    assert math.log(v) == pytest.approx(ref_log, rel=1e-10)


def test_cheb_smallest_root_quadratic_case():
    c = 0.25
    s = math.sqrt(c)
    tau = (-s / 2 - math.sqrt(c / 4 + 1)) / 2  # smaller root of z^2 + (s/2) z - 1/4
    root = cheb_smallest_root(2, c)
    assert abs(root.tau - tau) < 1e-12
    assert abs(root.tau - TAU_2) < 1e-12
    lam = charpoly_smallest_zero(MeixnerParams(c, 1), 2).value
    assert abs(lambda_from_epsilon(c, root.epsilon_n) - lam) < 1e-10
    assert abs(lam - LAMBDA_2) < 1e-10


@pytest.mark.parametrize("c", C_GRID)
def test_cheb_root_bracket_and_interlacing(c):
    for n in range(2, 65):
        root = cheb_smallest_root(n, c)
        assert 1 / (n * (n + 1)) < root.epsilon_n < 2 * math.sin(math.pi / (2 * n)) ** 2
        assert root.tau < -math.cos(math.pi / n)
        assert abs(cheb_phi(n, c, root.tau)) < 1e-10 * 2.0**-n * n


def test_cheb_smallest_root_domain():
    with pytest.raises(ParameterError):
        cheb_smallest_root(1, 0.5)
    with pytest.raises(ParameterError):
        cheb_phi(3, 1.2, 0.0)
