"""Gamma, Beta and Gauss hypergeometric evaluation for non-positive arguments.

The closed form of the fractional Laplacian of the bubble profile is
``C(n,s) * 2F1(a, b; c; -r^2)`` with ``a = (n+2s)/2``, ``b = (n-2(1-s))/2``,
``c = n/2``; everything here exists to evaluate that function (and its
parameter shifts) fast and to 1e-10 relative accuracy on z <= 0.

Evaluation routes
-----------------
* ``z in (-1/2, 0]``      : defining power series.
* ``z in [-100, -1/2]``   : Pfaff transform ``(1-z)^(-a) 2F1(a, c-b; c; w)``
  with ``w = z/(z-1) in (0,1)``; the transformed series has positive terms,
  so no cancellation.
* ``z < -100``            : Euler integral, integrated with QUADPACK's
  algebraic-weight rule (the endpoint exponents ``b-1`` and ``c-b-1`` are
  handled exactly), which stays accurate down to z -> -inf where the
  series-based routes run out of steam.

The Euler-integral route doubles as the independent oracle against the
series on the overlap region.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError

MAX_SERIES_TERMS = 10_000
SERIES_STOP = 1e-16
SERIES_CUT = -0.5  # direct series for z in (SERIES_CUT, 0]
PFAFF_CUT = -100.0  # Pfaff+series down to here, Euler integral below


@dataclass(frozen=True)
class Hyp2F1Params:
    """Parameter triple (a, b; c) of the Gauss hypergeometric function."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.c <= 0 and float(self.c) == int(self.c):
            raise DomainError(f"c={self.c} is zero or a negative integer")

    @property
    def shifted(self):
        """Parameters of dF/dz up to the factor a*b/c."""
        return Hyp2F1Params(self.a + 1.0, self.b + 1.0, self.c + 1.0)


def bubble_hyp_params(n: int, s: float) -> Hyp2F1Params:
    """The triple ((n+2s)/2, (n-2(1-s))/2, n/2) entering the bubble's
    fractional Laplacian."""
    if n < 3:
        raise DomainError("n >= 3 required")
    if not 0.0 < s < 1.0:
        raise DomainError("s in (0,1) required")
    return Hyp2F1Params((n + 2.0 * s) / 2.0, (n - 2.0 * (1.0 - s)) / 2.0, n / 2.0)


def gamma_fn(x: float) -> float:
    """Gamma function on the positive half line."""
    if x <= 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return math.gamma(x)


def beta_fn(x: float, y: float) -> float:
    """Euler Beta function B(x, y), x, y > 0."""
    return math.exp(
        math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y)
    )


def _series(a: float, b: float, c: float, z, max_terms=MAX_SERIES_TERMS):
    """Defining Gauss series at scalar or vector z, |z| < 1.

    Terms are updated by the ratio recurrence; stops once the current term
    is below SERIES_STOP relative to the partial sum twice in a row.
    """
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    term = np.ones_like(z)
    quiet = np.zeros_like(z, dtype=int)
    for k in range(max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        small = np.abs(term) <= SERIES_STOP * np.abs(total)
        quiet = np.where(small, quiet + 1, 0)
        if np.all(quiet >= 2):
            return total if total.ndim else float(total)
    raise AccuracyError(
        f"hypergeometric series did not settle within {max_terms} terms",
        value=float(np.max(np.abs(total))) if total.ndim else float(total),
        estimate=float(np.max(np.abs(term))),
    )


def hyp2f1_series(p: Hyp2F1Params, z) -> float:
    """Direct defining series; valid for |z| < 1 (z <= 0 here)."""
    z = np.asarray(z, dtype=float)
    if np.any(z > 0.0) or np.any(z <= -1.0):
        raise DomainError("series route needs z in (-1, 0]")
    out = _series(p.a, p.b, p.c, z)
    return out


def hyp2f1_pfaff(p: Hyp2F1Params, z) -> float:
    """Pfaff-transformed series; valid for all z < 0, efficient to z ~ -100."""
    z = np.asarray(z, dtype=float)
    if np.any(z >= 0.0):
        raise DomainError("Pfaff route needs z < 0")
    w = z / (z - 1.0)
    return (1.0 - z) ** (-p.a) * _series(p.a, p.c - p.b, p.c, w)


def _quad_alg(f, lo, hi, wvar, epsrel):
    out = integrate.quad(
        f, lo, hi, weight="alg", wvar=wvar, epsabs=0.0, epsrel=epsrel,
        limit=200, full_output=1,
    )
    val, err = out[0], out[1]
    if len(out) > 3 and not (abs(err) <= 100.0 * epsrel * abs(val)):
        raise AccuracyError(f"Euler quadrature: {out[3]}", value=val, estimate=err)
    return val, err


def _quad_plain(f, lo, hi, epsrel):
    out = integrate.quad(
        f, lo, hi, epsabs=0.0, epsrel=epsrel, limit=400, full_output=1,
    )
    val, err = out[0], out[1]
    if len(out) > 3 and not (abs(err) <= 100.0 * epsrel * abs(val)):
        raise AccuracyError(f"Euler quadrature: {out[3]}", value=val, estimate=err)
    return val, err


def hyp2f1_euler(p: Hyp2F1Params, z: float, epsrel: float = 1e-12):
    """Euler-integral route, requires c > b > 0; robust for any z <= 0.

    Returns the value; the quadrature error estimate is available through
    ``hyp2f1_euler_with_error``.
    """
    return hyp2f1_euler_with_error(p, z, epsrel)[0]


def hyp2f1_euler_with_error(p: Hyp2F1Params, z: float, epsrel: float = 1e-12):
    a, b, c = p.a, p.b, p.c
    if not (c > b > 0.0):
        raise DomainError("Euler integral route needs c > b > 0")
    if z > 0.0:
        raise DomainError("Euler route implemented for z <= 0 only")
    pref = math.gamma(c) / (math.gamma(b) * math.gamma(c - b))
    bigz = -z

    # Split at 1/2 so each endpoint weight is anchored at an interval end;
    # QUADPACK's QAWS handles the t^(b-1) and (1-t)^(c-b-1) factors exactly.
    def right(t):  # weight (1-t)^(c-b-1) applied by QAWS
        return t ** (b - 1.0) * (1.0 - z * t) ** (-a)

    v2, e2 = _quad_alg(right, 0.5, 1.0, (0.0, c - b - 1.0), epsrel)

    if bigz <= 4.0:
        def left(t):  # weight t^(b-1) applied by QAWS
            return (1.0 - t) ** (c - b - 1.0) * (1.0 - z * t) ** (-a)

        v1, e1 = _quad_alg(left, 0.0, 0.5, (b - 1.0, 0.0), epsrel)
        return pref * (v1 + v2), pref * (e1 + e2)

    # Large |z|: the factor (1+|z|t)^(-a) has a boundary layer of width
    # 1/|z| at t=0.  Map it out: t = u/|z| on the layer, t = e^v beyond.
    T = 1.0 / bigz

    def layer(u):  # weight u^(b-1); (1 - z t) = 1 + u exactly
        return (1.0 - T * u) ** (c - b - 1.0) * (1.0 + u) ** (-a)

    v1a, e1a = _quad_alg(layer, 0.0, 1.0, (b - 1.0, 0.0), epsrel)
    v1a, e1a = T ** b * v1a, T ** b * e1a

    def logmid(v):
        t = math.exp(v)
        return t ** b * (1.0 - t) ** (c - b - 1.0) * (1.0 + bigz * t) ** (-a)

    v1b, e1b = _quad_plain(logmid, math.log(T), math.log(0.5), epsrel)
    return pref * (v1a + v1b + v2), pref * (e1a + e1b + e2)


def hyp2f1(p: Hyp2F1Params, z) -> float:
    """2F1(a, b; c; z) for z <= 0, scalar or array, to ~1e-12 relative.

    Dispatches between the three routes by the size of z; see the module
    docstring.  z > 0 is out of scope and raises.
    """
    scalar = np.isscalar(z) or np.asarray(z).ndim == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z > 0.0):
        raise DomainError("hyp2f1 is defined here for z <= 0 only")
    out = np.empty_like(z)
    near = z > SERIES_CUT  # includes z == 0, where the series is exact
    mid = (~near) & (z >= PFAFF_CUT)
    far = z < PFAFF_CUT
    if np.any(near):
        out[near] = _series(p.a, p.b, p.c, z[near])
    if np.any(mid):
        out[mid] = hyp2f1_pfaff(p, z[mid])
    if np.any(far):
        out[far] = [hyp2f1_euler(p, zz) for zz in z[far]]
    return float(out[0]) if scalar else out


def hyp2f1_dz(p: Hyp2F1Params, z):
    """d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1,b+1;c+1;z)."""
    return (p.a * p.b / p.c) * hyp2f1(p.shifted, z)


def euler_integrand_bracket(rho: float, t: float, n: int, s: float) -> float:
    """Bracketed factor ((rho^2+t)/(1+rho^2 t))^((n+2s)/2) rho^(2(1-s)) - 1.

    Strictly negative on the open square (rho, t) in (0,1)^2: the base of
    the power is < 1 because (rho^2+t) - (1+rho^2 t) = -(1-t)(1-rho^2) < 0,
    and rho^(2(1-s)) < 1.
    """
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must be in (0,1), got {rho}")
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must be in (0,1), got {t}")
    if n < 3 or not 0.0 < s < 1.0:
        raise DomainError("need n >= 3, s in (0,1)")
    ratio = (rho * rho + t) / (1.0 + rho * rho * t)
    val = ratio ** ((n + 2.0 * s) / 2.0) * rho ** (2.0 * (1.0 - s)) - 1.0
    assert val < 0.0, "bracket must be negative on the open unit square"
    return val
