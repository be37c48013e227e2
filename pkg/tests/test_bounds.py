import math
import warnings

import numpy as np
import pytest

from taperqpe.bounds import (
    cleve_m,
    karnik_lower_bound,
    karnik_terms,
    practical_K,
    report_for_eps,
    required_K_nonasymptotic,
    required_m_asymptotic,
    required_m_nonasymptotic,
    required_m_zhu,
    slepian_gap,
    zhu_certified_index,
    zhu_R,
)
from taperqpe.eigen import full_spectrum, max_eigenpair
from taperqpe.kernels import average_kernel, classical_kernel
from taperqpe.lattice import QpeGrid

EPS_GRID = np.logspace(-12, -0.5, 40)


def test_goldens_by_hand():
    # hand evaluation: 175 (ln 100 + 1)^2 = 5498.14 -> 5499; log2(5500) = 12.43
    assert required_K_nonasymptotic(0.1) == 5499
    assert int(required_m_nonasymptotic(0.1)) == 14
    assert int(practical_K(0.1)) == 8
    assert int(required_m_asymptotic(1e-6)) == 4
    assert int(cleve_m(0.1)) == 3


def test_small_goldens():
    assert int(practical_K(10)) == 3
    assert int(required_m_asymptotic(math.exp(-2))) == 1
    assert int(cleve_m(0.5)) == 1


def test_karnik_below_one_and_monotone():
    for N in (32, 64, 128, 256, 1024):
        vals = [float(karnik_lower_bound(N, K)) for K in range(N // 2)]
        # the gap can underflow 1 - gap to 1.0, so check the gap itself
        assert all(min(karnik_terms(N, K)) > 0 for K in range(N // 2))
        assert max(vals) <= 1
        assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_karnik_n64_k3():
    lam = max_eigenpair(average_kernel(QpeGrid(3, 3, 3))).value
    assert lam >= float(karnik_lower_bound(64, 3))


def test_karnik_terms_recorded():
    rep = karnik_lower_bound(64, 3)
    a, b = karnik_terms(64, 3)
    assert rep.formula_terms == {"branch_logN": a, "branch_logK": b}
    assert rep.value == 1 - min(a, b)
    with pytest.raises(ValueError):
        karnik_lower_bound(8, 4)


def test_nonasymptotic_monotone_and_floor():
    ms = [int(required_m_nonasymptotic(e)) for e in EPS_GRID]
    assert all(b <= a for a, b in zip(ms, ms[1:]))
    assert min(int(required_m_nonasymptotic(e)) for e in (0.5, 0.9, 0.999)) >= 2


def test_nonasymptotic_dominates_asymptotic():
    for e in EPS_GRID[EPS_GRID < 1 / math.e]:
        assert int(required_m_nonasymptotic(e)) >= int(required_m_asymptotic(e))


@pytest.mark.parametrize("eps", [1e-2, 1e-4])
def test_practical_K_meets_target(eps):
    K = int(practical_K(eps))
    assert float(karnik_lower_bound(2**20, K, log_K=192)) >= 1 - eps


def test_practical_K_warns_outside_regime():
    with pytest.warns(UserWarning):
        rep = practical_K(1e-90)
    assert rep.warnings
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        practical_K(1e-80)


def test_slepian_simplified_nw2():
    rep = slepian_gap(64, 2 / 64)
    assert rep.formula_terms["simplified"] == pytest.approx(4 * math.pi * math.sqrt(2) * math.exp(-4 * math.pi))
    assert rep.formula_terms["simplified"] == pytest.approx(6.2e-5, rel=0.01)


@pytest.mark.parametrize("N", [2**12, 2**14, 2**16])
def test_slepian_forms_agree_small_w(N):
    rep = slepian_gap(N, 2 / N)
    assert rep.value == pytest.approx(rep.formula_terms["simplified"], rel=0.1)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_slepian_gap_vs_eigensolve(m):
    N = 2**10
    W = 2**m / N
    lam = max_eigenpair(classical_kernel(N, W)).value
    assert 1 - lam <= 10 * slepian_gap(N, W).value + 1e-15


def test_slepian_higher_orders_larger():
    gaps = [slepian_gap(256, 4 / 256, k).value for k in range(4)]
    assert all(b > a for a, b in zip(gaps, gaps[1:]))


def test_asymptotic_remark_inequality():
    for e in EPS_GRID[EPS_GRID < 1 / math.e]:
        m = int(required_m_asymptotic(e))
        assert 2 ** (m - 1) - 1 <= math.log(1 / e) - 1 + 1e-12
    with pytest.raises(ValueError):
        required_m_asymptotic(0.5)


def test_zhu_R_terms():
    rep = zhu_R(64, 0.1)
    assert rep.value > 0 and math.isfinite(rep.value)
    assert rep.value == pytest.approx(rep.formula_terms["head"] + rep.formula_terms["tail"])
    Rs = [zhu_R(64, e).value for e in (0.3, 0.1, 0.01, 1e-4)]
    assert all(b > a for a, b in zip(Rs, Rs[1:]))


def test_zhu_full_radius_certifies_nothing():
    for N in (64, 256, 4096):
        assert zhu_R(N, 0.1).value > N
        assert zhu_certified_index(N, 0.49, 0.1) < 0
    with pytest.raises(ValueError):
        required_m_zhu(3, 0.1)


@pytest.mark.parametrize("eps", [0.1, 0.01])
def test_zhu_head_term_holds_at_certified_index(eps):
    # eigenvalue number c (0-based) is at least 1 - eps whenever c >= 0
    N = 256
    for W in np.linspace(0.01, 0.49, 25):
        c = zhu_certified_index(N, W, eps, dominant_term_only=True)
        if c >= 0:
            vals = [p.value for p in full_spectrum(classical_kernel(N, W))]
            assert vals[c] >= 1 - eps
            assert vals[0] >= 1 - eps


def test_required_m_zhu_head_term():
    assert int(required_m_zhu(3, 0.1, dominant_term_only=True)) == 5
    ms = [int(required_m_zhu(5, e, dominant_term_only=True)) for e in (0.3, 0.1, 0.01, 1e-3, 1e-6)]
    assert all(b >= a for a, b in zip(ms, ms[1:]))
    grow = int(required_m_zhu(20, 0.01, dominant_term_only=True)) - int(required_m_zhu(5, 0.01, dominant_term_only=True))
    assert grow <= 3


def test_cleve_vs_asymptotic_separation():
    # linear versus doubly logarithmic growth in log(1/eps)
    small = [10.0**-j for j in (4, 8, 16, 32)]
    cl = [int(cleve_m(e)) for e in small]
    asy = [int(required_m_asymptotic(e)) for e in small]
    assert cl[-1] - cl[0] > 10 * (asy[-1] - asy[0])


def test_report_bundle():
    names = [r.name for r in report_for_eps(0.1)]
    assert names == ["required_m_nonasymptotic", "practical_K", "cleve_m", "required_m_asymptotic", "n_prime"]
    d = report_for_eps(0.1)[0].to_dict()
    assert set(d) == {"name", "inputs", "value", "formula_terms", "warnings"}


@pytest.mark.parametrize("eps", [0, -1, 1, 2])
def test_domain_errors(eps):
    with pytest.raises(ValueError):
        required_m_nonasymptotic(eps)
    with pytest.raises(ValueError):
        cleve_m(eps)
