"""Neyman-Pearson detection of an interferometric phase perturbation.

Two detection schemes for the beam-mixing perturbation exp(i phi J) acting
on a twin-beam probe:

* ideal scheme: the optimal pure-state NP receiver, with detection
  probability Q_phi fixed by the probe overlap |kappa|^2 and the minimum
  detectable phase following from the acceptance-ratio condition
  Q_phi / Q_0 = gamma_star;
* Mach-Zehnder scheme: difference-photocurrent readout, where the twin-beam
  gives identically zero false alarms and the detection probability is the
  leakage out of the zero-difference eigenspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from cventlab import fock_oracle


def np_detection_probability(q0: float, kappa_sq: float) -> float:
    """NP detection probability at false-alarm q0 for pure states with overlap kappa_sq.

    Q_phi = [sqrt(q0 kappa_sq) + sqrt((1-q0)(1-kappa_sq))]^2 when
    0 <= q0 <= kappa_sq, and 1 otherwise.
    """
    if not 0.0 <= q0 <= 1.0:
        raise ValueError(f"q0 must be in [0, 1], got {q0}")
    if not 0.0 <= kappa_sq <= 1.0:
        raise ValueError(f"kappa_sq must be in [0, 1], got {kappa_sq}")
    if q0 > kappa_sq:
        return 1.0
    return (
        math.sqrt(q0 * kappa_sq) + math.sqrt((1.0 - q0) * (1.0 - kappa_sq))
    ) ** 2


def twin_beam_overlap_sq(N: float, phi: float) -> float:
    """Survival probability |<<x|U_phi|x>>|^2 = [1 + N(N+2) sin^2 phi]^(-1)."""
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    return 1.0 / (1.0 + N * (N + 2.0) * math.sin(phi) ** 2)


def acceptance_threshold(q0: float, gamma_star: float) -> float:
    """g(Q0, gamma*): overlap deficit 1 - |kappa|^2 at which Q_phi/Q_0 = gamma*.

    The paper's Lambda(Q0, gamma*) is this same quantity under another name.
    """
    if gamma_star < 1.0:
        raise ValueError(f"gamma_star must be >= 1, got {gamma_star}")
    if not 0.0 <= q0 <= 1.0:
        raise ValueError(f"q0 must be in [0, 1], got {q0}")
    rad = gamma_star * (1.0 - q0) * (1.0 - gamma_star * q0)
    if rad < 0:
        raise ValueError(
            f"gamma_star * q0 = {gamma_star * q0} > 1: no acceptance solution"
        )
    return q0 * (1.0 + gamma_star * (1.0 - 2.0 * q0) - 2.0 * math.sqrt(rad))


@dataclass(frozen=True)
class PhaseDetectionResult:
    """Minimum detectable phase of the ideal NP scheme."""

    phi_min: float | None  # None when no phase is detectable at this N
    lambda_value: float  # g(Q0, gamma*), the overlap deficit
    q0: float
    gamma_star: float
    N: float

    @property
    def detectable(self) -> bool:
        return self.phi_min is not None

    def acceptance_probability(self, p_prior: float) -> float:
        """P(p, phi) = p gamma* / (p gamma* + 1 - p): confidence in a detection."""
        if not 0.0 < p_prior <= 1.0:
            raise ValueError(f"p_prior must be in (0, 1], got {p_prior}")
        return p_prior * self.gamma_star / (
            p_prior * self.gamma_star + 1.0 - p_prior
        )


def min_detectable_phase_ideal(
    q0: float, gamma_star: float, N: float
) -> PhaseDetectionResult:
    """phi_min = arcsin(sqrt(L/(1-L)) / sqrt(N(N+2))) with L = g(q0, gamma*).

    Asymptotically phi_min ~ sqrt(L/(1-L)) / N.  When the arcsin argument
    exceeds 1 no phase reaches the required acceptance ratio and phi_min is
    reported as None.
    """
    if N <= 0:
        raise ValueError(f"N must be > 0, got {N}")
    lam = acceptance_threshold(q0, gamma_star)
    if not 0.0 < lam < 1.0:
        raise ValueError(f"g(q0, gamma_star) = {lam} outside (0, 1)")
    arg = math.sqrt(lam / (1.0 - lam)) / math.sqrt(N * (N + 2.0))
    phi_min = math.asin(arg) if arg <= 1.0 else None
    return PhaseDetectionResult(
        phi_min=phi_min, lambda_value=lam, q0=q0, gamma_star=gamma_star, N=N
    )


class TruncationError(RuntimeError):
    """Fock-space tail above tolerance for the requested computation."""


def mz_zero_count_probability(
    x: float, phi: float, d_max: int | None = None, tail_tol: float = 1e-10
) -> float:
    """P(d = 0 | U_phi): zero difference-photocurrent probability of the evolved twin-beam."""
    if d_max is None:
        d_max = fock_oracle.default_d_max(x, tail_tol)
    state = fock_oracle.twin_beam_fock(x, d_max)
    if state.tail > tail_tol:
        raise TruncationError(
            f"truncation tail {state.tail:.3e} above {tail_tol:.1e}; "
            f"suggested d_max >= {fock_oracle.default_d_max(x, tail_tol, cap=10**6)}"
        )
    evolved = fock_oracle.apply_jx_evolution(state, phi)
    return fock_oracle.zero_difference_probability(evolved)


def mz_min_phase(target_q_phi: float, N: float) -> float:
    """Closed-form MZ minimum phase sqrt(2 Q_phi) / N.

    This is the printed scaling law; the exact small-phi leakage is
    Q_phi = N(N+2) phi^2 + O(phi^4), so against the numeric inversion the
    formula carries a systematic sqrt(2(N+2)/N) factor (about sqrt(2) for
    large N).  Use mz_min_phase_numeric for the oracle value.
    """
    if not 0.0 < target_q_phi < 1.0:
        raise ValueError(f"target_q_phi must be in (0, 1), got {target_q_phi}")
    if N <= 0:
        raise ValueError(f"N must be > 0, got {N}")
    return math.sqrt(2.0 * target_q_phi) / N


def mz_min_phase_numeric(
    target_q_phi: float, x: float, d_max: int | None = None, xtol: float = 1e-10
) -> float:
    """Invert P(d=0 | phi) = 1 - Q_phi by bisection on [0, pi/4].

    The bracket stops at pi/4: phi = pi/2 swaps the two beams, which leaves
    every |p, p> component invariant up to a phase, so the leakage returns
    to zero there and the first crossing lies in the rising half.
    """
    if not 0.0 < target_q_phi < 1.0:
        raise ValueError(f"target_q_phi must be in (0, 1), got {target_q_phi}")

    def leak(phi):
        return (1.0 - mz_zero_count_probability(x, phi, d_max)) - target_q_phi

    if leak(math.pi / 4.0) < 0:
        raise ValueError(
            f"Q_phi = {target_q_phi} not reachable for x = {x} on [0, pi/4]"
        )
    return float(bisect(leak, 0.0, math.pi / 4.0, xtol=xtol))
