"""Thermodynamic-limit quantities: free-energy densities, critical values,
and the scenario/regime classifier.

The scaling limit keeps the aspect ratios lam = L/N and mu = M/N fixed.
Square asymptotic domains (lam = mu) and rectangular ones (lam != mu)
have genuinely different phase structure: three regimes separated by two
third-order transitions in the square case, two regimes and one
transition in the rectangular case.  Scenario changes that close a gap
against the "soft" wall carry no transition at all.

All formulas accept an optional evaluation context (see
:mod:`fivevertex.precision`) so that verification code can run them at
arbitrary precision; the default is plain double precision.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError
from .exact import WeightParams
from .precision import resolve

#: |lam - mu| at or below this selects the square-domain formulas
SYMMETRIC_TOLERANCE = 1e-9

#: relative half-width within which x counts as sitting on a critical value
BOUNDARY_TOLERANCE = 1e-12

SCENARIOS = ("SBV", "SBS", "VBV", "VBS")
REGIMES = ("I", "II", "III")


@dataclass(frozen=True)
class ScaledGeometry:
    """Rescaled aspect ratios lam = L/N >= 1 and mu = M/N >= 1.

    The free-energy density is symmetric under lam <-> mu; internal
    formulas canonicalize to the ordered pair, while the original
    orientation is kept for reporting and for the full model free energy
    (whose alpha-term is *not* symmetric).
    """

    lam: float
    mu: float

    def __post_init__(self):
        if not (self.lam >= 1 and self.mu >= 1):
            raise DomainError(f"aspect ratios must be >= 1, got ({self.lam}, {self.mu})")

    @property
    def gamma(self) -> float:
        """Position of the right hard wall, min(lam, mu)."""
        return min(self.lam, self.mu)

    @property
    def is_symmetric(self) -> bool:
        return abs(self.lam - self.mu) <= SYMMETRIC_TOLERANCE

    def ordered(self) -> tuple[float, float]:
        """(min, max) orientation used by the rectangular-case formulas."""
        return (self.lam, self.mu) if self.lam <= self.mu else (self.mu, self.lam)


@dataclass(frozen=True)
class CriticalValues:
    """Critical weights and band-parameter landmarks at fixed geometry.

    Square case: only x_c and its reciprocal partner are meaningful.
    Rectangular case: x_c separates the two regimes; x1 and x2 mark the
    transition-free scenario changes at the soft wall; t0, t_c, t2 are
    the corresponding band-parameter values.
    """

    x_c: float
    x_c_tilde: float | None = None
    x1: float | None = None
    x2: float | None = None
    t_c: float | None = None
    t0: float | None = None
    t2: float | None = None
    sbs_region: bool = False


@dataclass(frozen=True)
class ScenarioReport:
    scenario: str
    regime: str
    geometry: ScaledGeometry
    x: float
    critical: CriticalValues
    on_boundary: bool = False
    boundary: str | None = None


def macmahon_growth(a, b, ctx=None):
    """Quadratic growth exponent of the boxed plane-partition count.

    lim (1/N^2) log PL(N, aN, bN), expressed through l(u) = u log u with
    the continuous extension l(0) = 0.  Vanishes whenever a or b does.
    """
    ctx = resolve(ctx)
    a, b = ctx.mpf(a), ctx.mpf(b)
    if a < 0 or b < 0:
        raise DomainError("arguments must be nonnegative")

    def ell(u):
        return u * ctx.log(u) if u > 0 else a * 0

    return (
        ell(a * a) - ell((a + 1) ** 2)
        + ell(b * b) - ell((b + 1) ** 2)
        - ell((a + b) ** 2) + ell((a + b + 1) ** 2)
    ) / 4


def macmahon_growth_equal(lam, ctx=None):
    """Equal-argument growth exponent, written in terms of lam = a + 1."""
    ctx = resolve(ctx)
    lam = ctx.mpf(lam)
    if lam < 1:
        raise DomainError("lam must be >= 1")
    if lam == 1:
        return lam * 0
    return (
        (2 * lam - 1) ** 2 / 2 * ctx.log(2 * lam - 1)
        - lam**2 * ctx.log(lam)
        - (lam - 1) ** 2 * ctx.log(lam - 1)
        - 2 * (lam - 1) ** 2 * ctx.log(ctx.mpf(2))
    )


def _ordered(geom: ScaledGeometry, ctx):
    lo, hi = geom.ordered()
    return ctx.mpf(lo), ctx.mpf(hi)


def critical_values(geom: ScaledGeometry, ctx=None) -> CriticalValues:
    """Critical weights (and band-parameter landmarks) for a geometry.

    Degenerate aspect ratios lam = 1 or mu = 1 are rejected: x1 diverges
    and the band collapses against the wall.
    """
    ctx = resolve(ctx)
    lo, hi = _ordered(geom, ctx)
    if lo <= 1 or hi <= 1:
        raise DomainError("critical values need lam > 1 and mu > 1")
    if geom.is_symmetric:
        x_c = (2 * lo - 1) ** 2
        return CriticalValues(x_c=x_c, x_c_tilde=1 / x_c)
    x_c = (ctx.sqrt(lo * hi) + ctx.sqrt((lo - 1) * (hi - 1))) ** 2
    x1 = (hi - 1) / (lo - 1)
    t0 = hi - lo
    t_c = (ctx.sqrt(lo * (hi - 1)) + ctx.sqrt((lo - 1) * hi)) ** 2
    disc = lo * (hi - lo) * ((lo + 4) * hi - (lo - 2) ** 2)
    root = ctx.sqrt(disc)
    t2 = ((lo + 1) * (hi - lo) + root) / (2 * lo - 1)
    poly = (
        -(lo**4) + 2 * lo**3 * hi - lo**2 * hi**2
        - 10 * lo**3 + 10 * lo * hi**2
        + 12 * lo**2 - 6 * lo * hi + 2 * hi**2
        - 4 * hi - 4 * lo + 2
    )
    x2 = (poly + ((lo + 4) * hi - (lo - 2) ** 2) * root) / (
        2 * (2 * lo - 1) ** 3 * (lo + hi - 1)
    )
    sbs = bool(1 < lo < ctx.mpf(4) / 3 and hi > (2 - lo) ** 2 / (4 - 3 * lo))
    return CriticalValues(
        x_c=x_c, x1=x1, x2=x2, t_c=t_c, t0=t0, t2=t2, sbs_region=sbs
    )


def classify(geom: ScaledGeometry, x, ctx=None) -> ScenarioReport:
    """Scenario and regime at (geometry, x).

    A value within the boundary tolerance of a critical x is assigned to
    the regime on the larger-x side and flagged.
    """
    ctx = resolve(ctx)
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError("x must be positive")
    cv = critical_values(geom, ctx)
    tol = BOUNDARY_TOLERANCE * max(ctx.mpf(1), x)

    def near(value):
        return value is not None and abs(x - value) <= tol

    if geom.is_symmetric:
        if near(cv.x_c):
            return ScenarioReport("SBV", "I", geom, x, cv, True, "x_c")
        if x > cv.x_c:
            return ScenarioReport("SBV", "I", geom, x, cv)
        if near(cv.x_c_tilde):
            return ScenarioReport("VBV", "II", geom, x, cv, True, "x_c_tilde")
        if x > cv.x_c_tilde:
            return ScenarioReport("VBV", "II", geom, x, cv)
        return ScenarioReport("VBS", "III", geom, x, cv)

    if cv.sbs_region:
        if near(cv.x1):
            return ScenarioReport("SBV", "I", geom, x, cv, True, "x1")
        if x > cv.x1:
            return ScenarioReport("SBV", "I", geom, x, cv)
        if near(cv.x_c):
            return ScenarioReport("SBS", "I", geom, x, cv, True, "x_c")
        if x > cv.x_c:
            return ScenarioReport("SBS", "I", geom, x, cv)
        return ScenarioReport("VBS", "II", geom, x, cv)

    if near(cv.x_c):
        return ScenarioReport("SBV", "I", geom, x, cv, True, "x_c")
    if x > cv.x_c:
        return ScenarioReport("SBV", "I", geom, x, cv)
    if near(cv.x2):
        return ScenarioReport("VBV", "II", geom, x, cv, True, "x2")
    if x > cv.x2:
        return ScenarioReport("VBV", "II", geom, x, cv)
    return ScenarioReport("VBS", "II", geom, x, cv)


def x_of_t(geom: ScaledGeometry, t, ctx=None):
    """Weight x as a rational function of the band parameter t.

    Strictly increasing from 0 to infinity as t runs over (t0, inf),
    t0 = |mu - lam|.
    """
    ctx = resolve(ctx)
    lo, hi = _ordered(geom, ctx)
    t = ctx.mpf(t)
    t0 = hi - lo
    if t < t0:
        raise DomainError(f"t must be >= t0 = {t0}")
    num = (1 + t) ** 2 * (t - lo + hi) * (t + lo - hi)
    den = ((2 * lo - 1) * t + lo - hi) * ((2 * hi - 1) * t - lo + hi)
    return num / den


def t_of_x(geom: ScaledGeometry, x, ctx=None):
    """Inverse of :func:`x_of_t` on (t0, inf), by monotone bracketing.

    Converges to |x_of_t(t) - x| <= 1e-13 * max(1, x) in double
    precision; the mpmath path bisects to the context's precision.
    """
    ctx = resolve(ctx)
    x = ctx.mpf(x)
    if x <= 0:
        raise DomainError("x must be positive")
    lo, hi = _ordered(geom, ctx)
    t0 = hi - lo

    def f(t):
        return x_of_t(geom, t, ctx) - x

    upper = t0 + max(ctx.mpf(1), t0) + 1
    for _ in range(200):
        if f(upper) > 0:
            break
        upper *= 2
    else:
        raise ConvergenceError("could not bracket t_of_x from above")

    if ctx.dps <= 17:
        t = brentq(lambda s: float(f(s)), float(t0), float(upper),
                   xtol=1e-15, rtol=1e-15)
        tol = 1e-13 * max(1.0, float(x))
        for _ in range(4):
            r = float(f(t))
            if abs(r) <= tol:
                return t
            h = max(abs(t), 1.0) * 1e-7
            if t - h <= t0:
                h = (t - float(t0)) / 2  # stay inside the domain near the left edge
            if h == 0:
                break
            slope = float(f(t + h) - f(t - h)) / (2 * h)
            if slope == 0:
                break
            t -= r / slope
        if abs(float(f(t))) > tol:
            raise ConvergenceError(
                f"t_of_x residual {float(f(t)):.3e} above tolerance {tol:.3e}"
            )
        return t

    a, b = t0, upper
    width_tol = ctx.mpf(10) ** (-(ctx.dps - 6))
    for _ in range(60 + int(3.4 * ctx.dps)):
        if b - a <= width_tol * max(ctx.mpf(1), a):
            break
        mid = (a + b) / 2
        if f(mid) > 0:
            b = mid
        else:
            a = mid
    return (a + b) / 2


def regime_one_free_energy_t(geom: ScaledGeometry, t, ctx=None):
    """Regime-I log-gas free-energy density in the band parametrization.

    Same function as the direct x-space formula of
    :func:`loggas_free_energy` in regime I; used to study the critical
    point with a single smooth parametrization on both sides.
    """
    ctx = resolve(ctx)
    lo, hi = _ordered(geom, ctx)
    t = ctx.mpf(t)
    p = (lo - 1) * (hi - 1)
    return (
        2 * p * ctx.log(t)
        - (2 * p - 1) * ctx.log(t + 1)
        - (2 * lo * hi - 2 * lo - 2 * hi + 1) / 2 * ctx.log(t + lo - hi)
        - (2 * lo * hi - 2 * lo - 2 * hi + 1) / 2 * ctx.log(t + hi - lo)
        + p * ctx.log(t + lo + hi)
        + p * ctx.log(t - lo - hi + 2)
        - ctx.log((2 * lo - 1) * t + lo - hi) / 2
        - ctx.log((2 * hi - 1) * t + hi - lo) / 2
    )


def regime_two_free_energy_t(geom: ScaledGeometry, t, ctx=None):
    """Regime-II log-gas free-energy density in the band parametrization.

    The integration constant is pinned by the exactly known value at
    x = 1 (t = lam + mu - 2), where the density equals minus the
    plane-partition growth exponent.
    """
    ctx = resolve(ctx)
    lo, hi = _ordered(geom, ctx)
    t = ctx.mpf(t)
    const = (
        (lo - 1) ** 2 * ctx.log(2 * (lo - 1))
        + (hi - 1) ** 2 * ctx.log(2 * (hi - 1))
        + lo**2 * ctx.log(2 * lo)
        + hi**2 * ctx.log(2 * hi)
    ) / 2
    return (
        (lo + hi - 2) ** 2 / 2 * ctx.log(t)
        + ((hi - lo) ** 2 + 2 * lo + 2 * hi - 1) / 2 * ctx.log(t + 1)
        + (2 * lo - 1) / 2 * ctx.log(t + lo - hi)
        + (2 * hi - 1) / 2 * ctx.log(t + hi - lo)
        - (lo + hi - 1) * ctx.log(t + lo + hi)
        - (2 * lo**2 - 2 * lo + 1) / 2 * ctx.log((2 * lo - 1) * t + lo - hi)
        - (2 * hi**2 - 2 * hi + 1) / 2 * ctx.log((2 * hi - 1) * t + hi - lo)
        + const
    )


def loggas_free_energy(geom: ScaledGeometry, x, ctx=None):
    """Free-energy density of the constrained log-gas at weight x.

    Dispatches on the scenario classification.  Continuous everywhere;
    the third derivative jumps at x_c (and, in the square case, at the
    reciprocal critical point), nowhere else.
    """
    ctx = resolve(ctx)
    x = ctx.mpf(x)
    report = classify(geom, x, ctx)
    lo, hi = _ordered(geom, ctx)

    if geom.is_symmetric:
        lam = lo
        if report.scenario == "SBV":
            return ctx.log(x) / 2 - (lam - 1) ** 2 * ctx.log(x / (x - 1))
        if report.scenario == "VBV":
            sx = ctx.sqrt(x)
            return (
                ctx.log(x) / 4
                + (2 * lam - 1) * ctx.log(2 * sx / (1 + sx))
                - macmahon_growth_equal(lam, ctx)
            )
        return (2 * lam - 1) / 2 * ctx.log(x) + (lam - 1) ** 2 * ctx.log(1 - x)

    if report.regime == "I":
        return ctx.log(x) / 2 - (lo - 1) * (hi - 1) * ctx.log(x / (x - 1))
    t = t_of_x(geom, x, ctx)
    return regime_two_free_energy_t(geom, t, ctx)


def polynomial_growth(geom: ScaledGeometry, x, ctx=None):
    """Growth exponent of the normalized polynomial factor,
    lim (1/N^2) log P = log(sqrt x) - loggas free energy."""
    ctx = resolve(ctx)
    x = ctx.mpf(x)
    return ctx.log(x) / 2 - loggas_free_energy(geom, x, ctx)


def vertex_free_energy(geom: ScaledGeometry, w: WeightParams) -> float:
    """Free-energy density of the five-vertex model itself.

    Uses the geometry in its original orientation: the alpha term is not
    symmetric under lam <-> mu, unlike the log-gas part.
    """
    import math

    if w.alpha <= 0:
        raise DomainError("alpha must be positive for the free energy")
    ratio = (w.x - 1) / w.delta
    if ratio <= 0:
        raise DomainError("(x-1)/Delta must be positive")
    lam, mu = geom.lam, geom.mu
    f2 = float(polynomial_growth(geom, w.x))
    return (
        -f2 / (mu * lam)
        - (mu - 1) * (lam - 1) / (mu * lam) * math.log(ratio)
        + (mu * lam - 2) / (2 * mu * lam) * math.log(w.x)
        - (lam - 2) / lam * math.log(w.alpha)
    )


def reoriented(geom: ScaledGeometry) -> ScaledGeometry:
    """The same geometry with the two aspect ratios swapped."""
    return replace(geom, lam=geom.mu, mu=geom.lam)
