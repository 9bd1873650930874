"""Closed-form profiles and nonlinearities of the mixed Lane-Emden model.

Everything in this module is a pure function of its arguments: the bubble
``U(r) = (1+r^2)^(-(n-2)/2)``, its rescalings, the radial kernel generator
``psi``, and the nonlinearity ``f_eps(t) = n(n-2) (t_+)^(p1-eps)`` together
with the mixed variant ``g = f_eps + mu*t``, ``mu = delta^(2(1-s))``.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError


def sphere_surface(n: int) -> float:
    """Surface measure of the unit sphere S^(n-1) in R^n."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def ball_volume(n: int, radius: float = 1.0) -> float:
    """Volume of the n-ball of the given radius."""
    return sphere_surface(n) / n * radius ** n


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: dimension, fractional order and perturbations.

    ``p1 = (n+2)/(n-2)`` is the critical power, ``p_eps = p1 - eps`` the
    perturbed one; ``mu = delta^(2(1-s))`` is the derived mixing weight and
    ``alpha`` the exponent of the fixed-point ball radius ``(eps+mu)^alpha``.
    """

    n: int
    s: float
    eps: float = 0.0
    delta: float = 0.0
    alpha: float = field(default=0.0)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"n must be an integer >= 3, got {self.n}")
        if not 0.0 < self.s < 1.0:
            raise DomainError(f"s must lie in (0,1), got {self.s}")
        if self.eps < 0.0:
            raise DomainError("eps must be >= 0")
        if self.delta < 0.0:
            raise DomainError("delta must be >= 0")
        if self.p_eps <= 1.0:
            raise DomainError(
                f"eps={self.eps} violates eps < 4/(n-2) = {4.0 / (self.n - 2)}"
            )
        alpha = self.alpha or self.default_alpha(self.n)
        object.__setattr__(self, "alpha", alpha)
        if not 0.0 < self.alpha < 1.0:
            raise DomainError("alpha must lie in (0,1)")
        if self.alpha <= 1.0 / self.p_eps:
            raise DomainError(
                f"alpha={self.alpha} must exceed 1/p_eps={1.0 / self.p_eps}"
            )

    @staticmethod
    def default_alpha(n: int) -> float:
        """Ball exponent default: 0.5, raised if 1/p1 gets close to it."""
        p1 = (n + 2.0) / (n - 2.0)
        return max(0.5, 1.1 / p1)

    @property
    def p1(self) -> float:
        return (self.n + 2.0) / (self.n - 2.0)

    @property
    def p_eps(self) -> float:
        return self.p1 - self.eps

    @property
    def mu(self) -> float:
        return self.delta ** (2.0 * (1.0 - self.s))

    @property
    def ball_radius(self) -> float:
        return (self.eps + self.mu) ** self.alpha

    def with_delta(self, delta: float) -> "ModelParams":
        return ModelParams(self.n, self.s, self.eps, delta, self.alpha)


def delta_from_mu(mu: float, s: float) -> float:
    """Invert mu = delta^(2(1-s))."""
    if mu < 0.0:
        raise DomainError("mu must be >= 0")
    return mu ** (1.0 / (2.0 * (1.0 - s)))


def bubble(r, n: int):
    """Bubble profile (1+r^2)^(-(n-2)/2); positive, decreasing."""
    r = np.asarray(r, dtype=float)
    out = (1.0 + r * r) ** (-(n - 2.0) / 2.0)
    return float(out) if out.ndim == 0 else out


def bubble_scaled(r, delta: float, n: int):
    """Scaled bubble delta^((n-2)/2) U(r/delta)."""
    if delta <= 0.0:
        raise DomainError("delta must be > 0 for the scaled bubble")
    r = np.asarray(r, dtype=float)
    out = delta ** ((n - 2.0) / 2.0) * bubble(r / delta, n)
    return float(out) if np.ndim(out) == 0 else out


def kernel_psi(r, n: int):
    """Radial generator of the kernel of the linearization at the bubble.

    psi = r U'(r) + (n-2)/2 U = ((n-2)/2) (1-r^2)/(1+r^2)^(n/2); vanishes
    exactly at r=1, positive inside, negative outside.
    """
    r = np.asarray(r, dtype=float)
    out = ((n - 2.0) / 2.0) * (1.0 - r * r) / (1.0 + r * r) ** (n / 2.0)
    return float(out) if out.ndim == 0 else out


def f_eps(t, params: ModelParams):
    """Nonlinearity n(n-2) (t_+)^(p_eps); vanishes on t <= 0."""
    t = np.asarray(t, dtype=float)
    tp = np.maximum(t, 0.0)
    out = params.n * (params.n - 2.0) * tp ** params.p_eps
    return float(out) if out.ndim == 0 else out


def f_eps_prime(t, params: ModelParams):
    """Derivative n(n-2) p_eps (t_+)^(p_eps - 1); continuous at 0."""
    t = np.asarray(t, dtype=float)
    tp = np.maximum(t, 0.0)
    out = params.n * (params.n - 2.0) * params.p_eps * tp ** (params.p_eps - 1.0)
    return float(out) if out.ndim == 0 else out


def g_eps_delta(t, params: ModelParams):
    """Mixed nonlinearity g = f_eps(t) + mu * t."""
    t = np.asarray(t, dtype=float)
    out = f_eps(t, params) + params.mu * t
    return float(out) if np.ndim(out) == 0 else out


def g_prime(t, params: ModelParams):
    """g' = f_eps'(t) + mu."""
    t = np.asarray(t, dtype=float)
    out = f_eps_prime(t, params) + params.mu
    return float(out) if np.ndim(out) == 0 else out


def f0_linearization_weight(r, n: int):
    """Potential f_0'(U(r)) = n(n+2) U(r)^(4/(n-2)) of the linearized
    operator; the closed power form avoids round-trip through f_eps_prime."""
    r = np.asarray(r, dtype=float)
    out = n * (n + 2.0) * (1.0 + r * r) ** (-2.0)
    return float(out) if out.ndim == 0 else out


def log_bubble(r, n: int):
    """log U(r) = -((n-2)/2) log1p(r^2), cancellation-free near r=0."""
    r = np.asarray(r, dtype=float)
    out = -((n - 2.0) / 2.0) * np.log1p(r * r)
    return float(out) if out.ndim == 0 else out
