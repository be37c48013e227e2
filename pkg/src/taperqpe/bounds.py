"""Closed-form eigenvalue bounds and ancilla-count formulas.

Every ``log`` is the natural logarithm.  Each function returns a
:class:`BoundReport` whose ``formula_terms`` keep the intermediate
quantities for auditing.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

# smallest failure probability for which the practical-K shortcut is claimed
PRACTICAL_EPS_FLOOR = 1e-81
# K substituted inside the logarithm by the practical-K shortcut
PRACTICAL_LOG_K = 192
ZHU_M_CAP = 40


@dataclass
class BoundReport:
    name: str
    inputs: dict
    value: float | int
    formula_terms: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def __float__(self):
        return float(self.value)

    def __int__(self):
        return int(self.value)


def _check_eps(eps, upper=1.0, name="eps"):
    if not 0 < eps < upper:
        raise ValueError(f"{name} must lie in (0, {upper}), got {eps}")


def karnik_terms(N: int, K: int, log_K: float | None = None) -> tuple[float, float]:
    """The two candidates inside the min of the eigenvalue lower bound.

    ``log_K`` replaces ``K`` inside ``log(100K + 75)`` when given.
    """
    c = 2 / math.pi**2
    lk = K if log_K is None else log_K
    first = 8 * math.exp(-(2 * K - 1) / (c * math.log(4 * N)))
    second = 10 * math.exp(-(2 * K - 6) / (c * math.log(100 * lk + 75)))
    return first, second


def karnik_lower_bound(N: int, K: int, log_K: float | None = None) -> BoundReport:
    """Lower bound on the top eigenvalue of the averaged sinc kernel."""
    if not (K >= 0 and 2 * K + 2 <= N):
        raise ValueError(f"need 0 <= K <= N/2 - 1, got N={N}, K={K}")
    first, second = karnik_terms(N, K, log_K)
    return BoundReport(
        "karnik_lower_bound",
        {"N": N, "K": K, "log_K": log_K},
        1 - min(first, second),
        {"branch_logN": first, "branch_logK": second},
    )


def required_K_nonasymptotic(eps: float) -> int:
    return math.ceil(175 * (math.log(10 / eps) + 1) ** 2)


def required_m_nonasymptotic(eps: float) -> BoundReport:
    """Boost qubits sufficient for average success ``1 - eps`` at any N."""
    _check_eps(eps)
    K = required_K_nonasymptotic(eps)
    m = math.ceil(math.log2(K + 1)) + 1
    return BoundReport("required_m_nonasymptotic", {"eps": eps}, m, {"K": K})


def practical_K(eps: float) -> BoundReport:
    """Half-window that suffices once ``K`` inside the logarithm is capped at 192."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    K = math.ceil(math.log(10 / eps)) + 3
    report = BoundReport("practical_K", {"eps": eps}, K, {"log_K": PRACTICAL_LOG_K})
    if eps < PRACTICAL_EPS_FLOOR:
        msg = f"eps={eps} is below the regime eps >= {PRACTICAL_EPS_FLOOR} where the shortcut holds"
        report.warnings.append(msg)
        warnings.warn(msg, stacklevel=2)
    return report


def slepian_gap(N: int, W: float, k: int = 0) -> BoundReport:
    """Asymptotic ``1 - lambda_k`` for the classical DPSS kernel.

    ``formula_terms["simplified"]`` holds the small-``W`` top-eigenvalue form
    ``4 pi sqrt(NW) exp(-2 pi NW)``.
    """
    if not 0 < W < 0.5:
        raise ValueError(f"need 0 < W < 1/2, got {W}")
    if k < 0 or N < 1:
        raise ValueError("need k >= 0 and N >= 1")
    alpha = 1 - math.cos(2 * math.pi * W)
    ra = math.sqrt(alpha)
    gamma = math.log(1 + 2 * ra / (math.sqrt(2) - ra))
    log_gap = (
        0.5 * math.log(math.pi)
        - math.lgamma(k + 1)
        + (14 * k + 9) / 4 * math.log(2)
        + (2 * k + 1) / 4 * math.log(alpha)
        - (k + 0.5) * math.log(2 - alpha)
        + (k + 0.5) * math.log(N)
        - gamma * N
    )
    simplified = 4 * math.pi * math.sqrt(N * W) * math.exp(-2 * math.pi * N * W)
    return BoundReport(
        "slepian_gap",
        {"N": N, "W": W, "k": k},
        math.exp(log_gap),
        {"alpha": alpha, "gamma": gamma, "simplified": simplified},
    )


def required_m_asymptotic(eps: float) -> BoundReport:
    """Boost qubits for average success ``1 - eps`` in the large-N regime."""
    _check_eps(eps, 1 / math.e)
    inner = math.log(1 / eps)
    return BoundReport("required_m_asymptotic", {"eps": eps}, math.ceil(math.log2(inner)), {"log_inv_eps": inner})


def zhu_R(N: int, eps: float) -> BoundReport:
    """Radius ``R(N, eps)`` of the periodic-DPSS eigenvalue count bound."""
    if N < 2:
        raise ValueError(f"need N >= 2, got {N}")
    _check_eps(eps, 0.5)
    head = (4 / math.pi**2 * math.log(8 * N) + 6) * math.log(16 / eps)
    r = N / (N - 1)
    tail = 2 * max(-math.log(math.pi / 32 * (r * r - 1) * eps) / math.log(r), 0.0)
    return BoundReport("zhu_R", {"N": N, "eps": eps}, head + tail, {"head": head, "tail": tail})


def zhu_certified_index(N: int, W: float, eps: float, dominant_term_only: bool = False) -> int:
    """Index ``2 floor(NW) - ceil(R)``; eigenvalues up to it are at least ``1 - eps``.

    Negative means the bound certifies nothing.
    """
    rep = zhu_R(N, eps)
    R = rep.formula_terms["head"] if dominant_term_only else rep.value
    return 2 * math.floor(N * W + 1e-12) - math.ceil(R)


def required_m_zhu(ell: int, eps: float, dominant_term_only: bool = False, cap: int = ZHU_M_CAP) -> BoundReport:
    """Smallest ``m`` for which the periodic-DPSS bound certifies the top eigenvalue.

    With the full radius the tail term grows like ``2 N log N`` and always
    exceeds ``2 floor(NW) < N``, so the search runs into ``cap`` and raises.
    ``dominant_term_only`` keeps only the ``log(1/eps) log N`` head term.
    """
    if ell < 1:
        raise ValueError(f"ell must be >= 1, got {ell}")
    _check_eps(eps, 0.5)
    for m in range(cap + 1):
        N = 2 ** (ell + m)
        W = 2**m / N
        if zhu_certified_index(N, W, eps, dominant_term_only) >= 0:
            R = zhu_R(N, eps)
            return BoundReport(
                "required_m_zhu",
                {"ell": ell, "eps": eps, "dominant_term_only": dominant_term_only},
                m,
                {"N": N, "NW": N * W, **R.formula_terms},
            )
    raise ValueError(f"no m <= {cap} satisfies 2 floor(NW) >= ceil(R) for ell={ell}, eps={eps}")


def cleve_m(eps: float) -> BoundReport:
    """Boost qubits the tophat taper needs for success ``1 - eps``."""
    _check_eps(eps)
    return BoundReport("cleve_m", {"eps": eps}, math.ceil(math.log2(1 / (2 * eps) + 0.5)))


def report_for_eps(eps: float) -> list[BoundReport]:
    """All qubit-count formulas that accept ``eps``."""
    out = [required_m_nonasymptotic(eps), practical_K(eps), cleve_m(eps)]
    if eps < 1 / math.e:
        out.append(required_m_asymptotic(eps))
    from .prep import n_prime

    out.append(BoundReport("n_prime", {"eps": eps}, n_prime(eps)))
    return out
