"""
True data-generating mechanisms.

S1 = (1, X1, ..., X_{d1-1}) with standard normal X. Potential time-2
covariates are S2(a1) = xi + loading terms, sharing the noise xi across a1:

- S2_0 = kappa X1 + tau a1 + xi_0  (+ omega (X1^2 - 1) when or1 is misspecified)
- S2_1 = xi_1                      (independent of the past)
- S2_j = kappa X_j + xi_j          for 2 <= j < d1, and xi_j beyond

pi(S1) = expit(S1'gamma [+ omega_ps h1]) and rho(S2bar) = expit(S2bar'delta [+ omega_ps h2]),
both truncated into [c0, 1 - c0], with h1 = (X1^2 - 1) + X1 X2 and
h2 = (S2_1^2 - 1) + X1 S2_0. The potential outcome is

    Y(a1, a2) = S2bar(a1)'alpha [+ omega ((S2_1^2 - 1) + X1 S2_1)] - effect (2 - a1 - a2) + eps

All nonlinear terms are centered, so the counterfactual means are
alpha_0 + alpha_{S2_0} tau a1 - effect (2 - a1 - a2) under every pattern.

Dependencies: numpy, scipy.special
System role: Known-truth mechanisms behind generate, oracle_eta and the representation check
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from seqdr.core.model_core.types import Dataset, NuisanceParams, TreatmentPath
from seqdr.models.scenario import MisspecFlags, ScenarioSpec

PATH_LABELS = ("0,0", "0,1", "1,0", "1,1")

GAMMA_INTERCEPT = 0.25
GAMMA_MAGNITUDE = 0.35
DELTA_INTERCEPT = 0.25
DELTA_MAGNITUDE = 0.35
ALPHA_S1_MAGNITUDE = 1.0
ALPHA_S2_LEAD = 1.0
ALPHA_S2_MAGNITUDE = 0.5


def _alternating(count: int, magnitude: float) -> np.ndarray:
    return magnitude * np.array([1.0 if i % 2 == 0 else -1.0 for i in range(count)])


def _delta_slots(d1: int, d2: int) -> list[int]:
    """Order in which delta's nonzeros fill the history: intercept, then S1 and
    S2 coordinates interleaved, with the pure-noise column S2_1 last."""
    s1_slots = list(range(1, d1))
    s2_slots = [d1 + j for j in [0] + list(range(2, d2)) + [1]]
    slots = [0]
    for i in range(max(len(s1_slots), len(s2_slots))):
        if i < len(s1_slots):
            slots.append(s1_slots[i])
        if i < len(s2_slots):
            slots.append(s2_slots[i])
    return slots


def default_coefficients(spec: ScenarioSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Sparse generating coefficients built from the scenario's sparsity counts.

    Returns:
        tuple: (gamma of length d1, delta and alpha of length d1 + d2)
    """
    d1, d2 = spec.d1, spec.d2
    gamma = np.zeros(d1)
    gamma[0] = GAMMA_INTERCEPT
    gamma[1 : spec.s_gamma] = _alternating(spec.s_gamma - 1, GAMMA_MAGNITUDE)

    delta = np.zeros(d1 + d2)
    slots = _delta_slots(d1, d2)[: spec.s_delta]
    delta[slots[0]] = DELTA_INTERCEPT
    delta[slots[1:]] = _alternating(len(slots) - 1, DELTA_MAGNITUDE)

    alpha = np.zeros(d1 + d2)
    alpha[0] = 1.0
    alpha[1 : spec.s_beta] = _alternating(spec.s_beta - 1, ALPHA_S1_MAGNITUDE)
    alpha[d1] = ALPHA_S2_LEAD
    alpha[d1 + 1 : d1 + spec.s_alpha] = _alternating(spec.s_alpha - 1, ALPHA_S2_MAGNITUDE)
    return gamma, delta, alpha


def _last_nonzero(vector: np.ndarray) -> int:
    nonzero = np.flatnonzero(vector)
    return int(nonzero[-1]) + 1 if nonzero.size else 0


@dataclass(frozen=True, eq=False)
class Population:
    """One draw from the mechanism: realized data plus all potential outcomes."""

    dataset: Dataset
    potential_outcomes: dict[str, np.ndarray]


class TrueMechanisms:
    """True propensities, outcome regressions and sampler of a scenario."""

    def __init__(
        self,
        spec: ScenarioSpec,
        gamma: np.ndarray,
        delta: np.ndarray,
        alpha: np.ndarray,
    ) -> None:
        """
        Initialize mechanisms with explicit coefficients.

        Args:
            spec: Scenario supplying loadings, effects and misspecification flags
            gamma: Time-1 propensity coefficients (defines d1)
            delta: Time-2 propensity coefficients
            alpha: Time-2 outcome coefficients (defines d1 + d2)
        """
        self.spec = spec
        self.flags: MisspecFlags = spec.misspec
        self.gamma = np.asarray(gamma, dtype=np.float64)
        self.delta = np.asarray(delta, dtype=np.float64)
        self.alpha = np.asarray(alpha, dtype=np.float64)
        self.d1 = int(self.gamma.shape[0])
        self.d2 = int(self.alpha.shape[0]) - self.d1
        self.kappa = spec.covariate_loading
        self.tau = spec.covariate_shift
        self.omega = spec.misspec_strength
        self.omega_ps = spec.propensity_misspec_strength
        self.c0 = spec.overlap_c0

    @classmethod
    def from_spec(cls, spec: ScenarioSpec) -> "TrueMechanisms":
        """Mechanisms at the scenario's full dimensions."""
        if spec.coef_true is not None:
            coef = spec.coef_true
            return cls(spec, np.array(coef.gamma), np.array(coef.delta), np.array(coef.alpha))
        return cls(spec, *default_coefficients(spec))

    def active_window(self) -> tuple[int, int]:
        """
        Smallest leading blocks (w1, w2) of S1 and S2 holding every nonzero
        coefficient and every covariate a mechanism reads.

        Columns outside the window are independent noise plus loadings on
        window columns, so every population target is zero there.
        """
        d1 = self.d1
        w1 = max(
            3,
            _last_nonzero(self.gamma),
            _last_nonzero(self.delta[:d1]),
            _last_nonzero(self.alpha[:d1]),
        )
        w2 = max(2, _last_nonzero(self.delta[d1:]), _last_nonzero(self.alpha[d1:]))
        w1 = max(w1, min(w2, d1))
        return w1, w2

    def windowed(self) -> "TrueMechanisms":
        """Mechanisms restricted to the active window."""
        w1, w2 = self.active_window()
        keep = np.r_[0:w1, self.d1 : self.d1 + w2]
        return TrueMechanisms(self.spec, self.gamma[:w1], self.delta[keep], self.alpha[keep])

    def pad(self, eta: NuisanceParams, d1: int, d2: int) -> NuisanceParams:
        """Embed coefficients fit on these dimensions into (d1, d2) with zeros."""
        def embed_history(vector: np.ndarray) -> np.ndarray:
            full = np.zeros(d1 + d2)
            full[: self.d1] = vector[: self.d1]
            full[d1 : d1 + self.d2] = vector[self.d1 :]
            return full

        def embed_s1(vector: np.ndarray) -> np.ndarray:
            full = np.zeros(d1)
            full[: self.d1] = vector
            return full

        return NuisanceParams(
            gamma=embed_s1(eta.gamma),
            delta=embed_history(eta.delta),
            alpha=embed_history(eta.alpha),
            beta=embed_s1(eta.beta),
        )

    # Mechanism functions

    def covariates_time2(self, s1: np.ndarray, xi: np.ndarray, a1: np.ndarray | float) -> np.ndarray:
        """Potential S2 under time-1 treatment ``a1``."""
        x1 = s1[:, 1]
        s2 = xi.copy()
        s2[:, 0] += self.kappa * x1 + self.tau * np.asarray(a1, dtype=np.float64)
        if self.flags.or1:
            s2[:, 0] += self.omega * (x1**2 - 1.0)
        shared = min(self.d1, self.d2)
        if shared > 2:
            s2[:, 2:shared] += self.kappa * s1[:, 2:shared]
        return s2

    def propensity_time1(self, s1: np.ndarray) -> np.ndarray:
        """pi(S1) = P(A1 = 1 | S1)."""
        u = s1 @ self.gamma
        if self.flags.ps1:
            x1, x2 = s1[:, 1], s1[:, 2]
            u = u + self.omega_ps * ((x1**2 - 1.0) + x1 * x2)
        return np.clip(expit(u), self.c0, 1.0 - self.c0)

    def propensity_time2(self, s_bar: np.ndarray) -> np.ndarray:
        """rho(S2bar) = P(A2 = 1 | S2bar, A1)."""
        u = s_bar @ self.delta
        if self.flags.ps2:
            x1, s2_0, s2_1 = s_bar[:, 1], s_bar[:, self.d1], s_bar[:, self.d1 + 1]
            u = u + self.omega_ps * ((s2_1**2 - 1.0) + x1 * s2_0)
        return np.clip(expit(u), self.c0, 1.0 - self.c0)

    def outcome_time2(self, s_bar: np.ndarray, path: TreatmentPath | None = None) -> np.ndarray:
        """nu(S2bar) = E[Y(a1, a2) | S2bar(a1)]."""
        path = path or TreatmentPath()
        mean = s_bar @ self.alpha
        if self.flags.or2:
            x1, s2_1 = s_bar[:, 1], s_bar[:, self.d1 + 1]
            mean = mean + self.omega * ((s2_1**2 - 1.0) + x1 * s2_1)
        return mean - self._effect_shift(path)

    def implied_beta(self, a1: int = 1) -> np.ndarray:
        """Linear part of the nested outcome E[nu(S2bar(a1)) | S1]."""
        beta = self.alpha[: self.d1].copy()
        alpha_s2 = self.alpha[self.d1 :]
        beta[0] += self.tau * a1 * alpha_s2[0]
        beta[1] += self.kappa * alpha_s2[0]
        shared = min(self.d1, self.d2)
        if shared > 2:
            beta[2:shared] += self.kappa * alpha_s2[2:shared]
        return beta

    def outcome_time1(self, s1: np.ndarray, path: TreatmentPath | None = None) -> np.ndarray:
        """mu(S1) = E[Y(a1, a2) | S1]."""
        path = path or TreatmentPath()
        mean = s1 @ self.implied_beta(path.a1_target)
        if self.flags.or1:
            mean = mean + self.alpha[self.d1] * self.omega * (s1[:, 1] ** 2 - 1.0)
        return mean - self._effect_shift(path)

    def _effect_shift(self, path: TreatmentPath) -> float:
        return self.spec.treatment_effect * (2 - path.a1_target - path.a2_target)

    def theta_closed_form(self, path: TreatmentPath | None = None) -> float:
        """E[Y(a1, a2)]; exact because every nonlinear term has mean zero."""
        path = path or TreatmentPath()
        return float(
            self.alpha[0]
            + self.alpha[self.d1] * self.tau * path.a1_target
            - self._effect_shift(path)
        )

    # Sampling

    def draw(self, n: int, rng: np.random.Generator) -> Population:
        """
        Draw n observations with all four potential outcomes.

        The draw order (X, xi, two uniforms, eps) is fixed so a seed pins the
        dataset bit for bit.
        """
        x = rng.standard_normal((n, self.d1 - 1))
        xi = rng.standard_normal((n, self.d2))
        uniform1 = rng.random(n)
        uniform2 = rng.random(n)
        eps = self.spec.noise_sd * rng.standard_normal(n)

        s1 = np.column_stack([np.ones(n), x])
        a1 = (uniform1 < self.propensity_time1(s1)).astype(np.float64)
        s2_by_a1 = {a: self.covariates_time2(s1, xi, float(a)) for a in (0, 1)}
        potential = {}
        for label in PATH_LABELS:
            path = TreatmentPath.parse(label)
            s_bar = np.hstack([s1, s2_by_a1[path.a1_target]])
            potential[label] = self.outcome_time2(s_bar, path) + eps

        s2 = np.where(a1[:, None] == 1.0, s2_by_a1[1], s2_by_a1[0])
        a2 = (uniform2 < self.propensity_time2(np.hstack([s1, s2]))).astype(np.float64)
        y = np.select(
            [(a1 == a) & (a2 == b) for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))],
            [potential[label] for label in PATH_LABELS],
        )
        return Population(
            dataset=Dataset(y=y, a1=a1, a2=a2, s1=s1, s2=s2),
            potential_outcomes=potential,
        )

    def sample(self, n: int, rng: np.random.Generator) -> Dataset:
        """Realized dataset of size n."""
        return self.draw(n, rng).dataset

    @property
    def theta_true(self) -> float:
        return self.theta_closed_form()

    @property
    def theta_mc_se(self) -> float:
        return 0.0

    def generating_params(self) -> NuisanceParams:
        """(gamma0, delta0, alpha0, beta0) for the (1,1) path."""
        return NuisanceParams(
            gamma=self.gamma,
            delta=self.delta,
            alpha=self.alpha,
            beta=self.implied_beta(1),
        )
