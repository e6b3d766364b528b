"""Equilibrium measure of the constrained log-gas: band end-points,
densities, resolvents, and first moments in every scenario.

The gas lives on [0, gamma] with hard walls at both ends and the
discreteness constraint 0 <= rho <= 1.  A single band [a, b] carries
0 < rho < 1; each flanking gap is either a void (rho = 0) or saturated
(rho = 1), giving the four scenarios SBV, SBS, VBV, VBS read left to
right.  Closed forms are implemented per scenario; a singular-integral
quadrature provides an independent oracle for the resolvent.

Branch convention: every sqrt(z - c) is the principal branch, cutting
along (-inf, c]; logs are principal-valued.  With this choice the +i0
boundary values of the closed forms reproduce the densities.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import IntegrationWarning, quad

from .asymptotics import ScaledGeometry, classify, t_of_x, x_of_t
from .errors import DomainError, InternalConsistencyError, QuadratureError
from .precision import resolve

#: closed-form resolvents reject z closer than this to the support
CUT_GUARD = 1e-12


@dataclass(frozen=True)
class BandSupport:
    """Band [a, b] plus scenario tag for one (geometry, x)."""

    a: float
    b: float
    scenario: str
    geometry: ScaledGeometry
    x: float
    collapsed: bool = False

    @property
    def gamma(self) -> float:
        return self.geometry.gamma

    def gaps(self) -> tuple[tuple[float, float, float], ...]:
        """((lo, hi, density value) for each gap interval)."""
        left = 1.0 if self.scenario in ("SBV", "SBS") else 0.0
        right = 1.0 if self.scenario in ("VBS", "SBS") else 0.0
        return ((0.0, self.a, left), (self.b, self.gamma, right))

    def measure_support(self) -> tuple[float, float]:
        """Interval hull of band plus saturated gaps (where W has cuts)."""
        lo = 0.0 if self.scenario in ("SBV", "SBS") else self.a
        hi = self.gamma if self.scenario in ("VBS", "SBS") else self.b
        return (lo, hi)


@dataclass(frozen=True)
class ParametricState:
    """Rational parametrization of the VBV/VBS end-point system."""

    t: float
    w_plus: float
    w_minus: float
    A_plus: float
    A_minus: float
    B_plus: float
    B_minus: float
    C_plus: float
    C_minus: float
    N_plus: float
    N_minus: float
    nu: int


@dataclass(frozen=True)
class MeasureClosure:
    """Evaluator bundle for one scenario."""

    support: BandSupport
    density: Callable[[float], float]
    resolvent: Callable[[complex], complex]
    first_moment: float


def parametric_state(geom: ScaledGeometry, t: float, nu: int = 1) -> ParametricState:
    """All parametric quantities at band parameter t, with validation.

    The six closed-form expressions must satisfy the multiplicative and
    additive consistency relations and the two linear constraints; a
    violation beyond 1e-12 signals a transcription error and raises.
    """
    if nu not in (1, -1):
        raise DomainError("nu must be +1 (VBV) or -1 (VBS)")
    lo, hi = geom.ordered()
    t0 = hi - lo
    if t <= t0:
        raise DomainError(f"t must exceed t0 = {t0}")
    den = 2 * t * t * (lo + hi + t)
    f_lo = (2 * lo - 1) * t + lo - hi
    f_hi = (2 * hi - 1) * t - lo + hi
    a_plus = f_lo * f_hi / den
    a_minus = (t + 1) * (t - lo + hi) * (t + lo - hi) / den
    b_plus = (t + 1) * (t + lo - hi) * f_lo / den
    b_minus = (t - lo + hi) * f_hi / den
    c_plus = (t + 1) * (t - lo + hi) * f_hi / den
    c_minus = (t + lo - hi) * f_lo / den
    n_plus = lo + hi - 1.0
    n_minus = 1.0
    w_minus = (n_plus * n_minus + (hi - lo) ** 2 * (t + 1) / t**2) / (n_plus + n_minus * (t + 1))
    w_plus = (t + 1) * w_minus

    tol = 1e-12 * max(1.0, lo + hi)
    residuals = {
        "mult_ab": a_plus * a_minus - b_plus * b_minus,
        "mult_bc": b_plus * b_minus - c_plus * c_minus,
        "add_b": (a_plus + a_minus) - (lo - b_plus - b_minus),
        "add_c": (a_plus + a_minus) - (hi - c_plus - c_minus),
        "linear_plus": 2 * a_plus + b_plus + c_plus - n_plus,
        "linear_minus": 2 * a_minus + b_minus + c_minus - n_minus,
        "w_plus": w_plus - (n_plus - 2 * a_plus),
        "w_minus": w_minus - (n_minus - 2 * a_minus),
    }
    bad = {k: v for k, v in residuals.items() if abs(v) > tol}
    if bad:
        raise InternalConsistencyError(f"parametric relations violated: {bad}")
    if min(a_plus, a_minus, b_plus, b_minus, c_plus, c_minus) < -tol:
        raise InternalConsistencyError("parametric quantities must be nonnegative")
    return ParametricState(
        t=t, w_plus=w_plus, w_minus=w_minus,
        A_plus=a_plus, A_minus=a_minus, B_plus=b_plus, B_minus=b_minus,
        C_plus=c_plus, C_minus=c_minus, N_plus=n_plus, N_minus=n_minus, nu=nu,
    )


def _endpoint_values(geom: ScaledGeometry, x, scenario: str, ctx):
    """Scenario-dispatched closed forms for (a, b) at the context's
    precision.  The high-precision path matters for large-|z| resolvent
    expansions, where a double-precision residual in the end-point
    equations is amplified by |z|."""
    ctx = resolve(ctx)
    lo, hi = geom.ordered()
    lam, mu = ctx.mpf(lo), ctx.mpf(hi)
    x = ctx.mpf(x)
    if geom.is_symmetric:
        sx = ctx.sqrt(x)
        if scenario == "SBV":
            return (sx + 1 - 2 * lam) / (sx - 1), (sx - 1 + 2 * lam) / (sx + 1)
        if scenario == "VBV":
            q = ctx.sqrt(2 * lam - 1)
            r = ctx.sqrt(sx)
            return (q - r) ** 2 / (2 * (1 + sx)), (q + r) ** 2 / (2 * (1 + sx))
        return (1 - sx) / (1 + sx) * (lam - 1), (1 + sx) / (1 - sx) * (lam - 1)
    if scenario in ("SBV", "SBS"):
        s = 2 * ctx.sqrt(x * (mu - 1) * (lam - 1))
        return (x + 1 - mu - lam - s) / (x - 1), (x + 1 - mu - lam + s) / (x - 1)
    t = t_of_x(geom, x, ctx)
    den = 2 * t * t * (lam + mu + t)
    a_plus = ((2 * lam - 1) * t + lam - mu) * ((2 * mu - 1) * t - lam + mu) / den
    a_minus = (t + 1) * (t - lam + mu) * (t + lam - mu) / den
    root = ctx.sqrt(max(a_plus * a_minus, ctx.mpf(0)))
    return a_plus + a_minus - 2 * root, a_plus + a_minus + 2 * root


def band_endpoints(geom: ScaledGeometry, x: float) -> BandSupport:
    """Scenario-correct band end-points at (geometry, x).

    Dispatches on the classifier.  The collapsed flag marks the x -> 0
    degeneration where the band shrinks onto the saturated block.
    """
    report = classify(geom, x)
    gamma = geom.gamma
    scen = report.scenario
    a, b = _endpoint_values(geom, x, scen, None)

    tol = 1e-9 * max(1.0, gamma)
    if a < -tol or b > gamma + tol or b < a - tol:
        raise InternalConsistencyError(
            f"end-points ({a}, {b}) violate 0 <= a <= b <= {gamma} for {scen} at x={x}"
        )
    a = min(max(a, 0.0), gamma)
    b = min(max(b, a), gamma)
    collapsed = (b - a) <= 1e-12 * max(1.0, gamma)
    return BandSupport(a=a, b=b, scenario=scen, geometry=geom, x=x, collapsed=collapsed)


def _edge_values(scenario: str) -> tuple[float, float]:
    left = 1.0 if scenario in ("SBV", "SBS") else 0.0
    right = 1.0 if scenario in ("VBS", "SBS") else 0.0
    return left, right


def density(support: BandSupport) -> Callable[[float], float]:
    """Equilibrium density as a function on [0, gamma].

    Arctangent band profile extended by its gap values; band-edge values
    are the continuous limits (0 against a void, 1 against saturation).
    """
    a, b = support.a, support.b
    lo, hi = support.geometry.ordered()
    gamma = lo
    scen = support.scenario
    left, right = _edge_values(scen)

    def angle(num: float, den: float) -> float:
        # den vanishes when an end-point sits on a wall (rounded onto it);
        # the arctan limit is then pi/2
        if den <= 0.0:
            return math.pi / 2
        return math.atan(math.sqrt(num / den))

    def rho(z: float) -> float:
        if not 0 <= z <= gamma:
            raise DomainError(f"density defined on [0, {gamma}], got {z}")
        if z <= a:
            return left
        if z >= b:
            return right
        t_lo = angle((lo - a) * (b - z), (lo - b) * (z - a))
        t_hi = angle((hi - a) * (b - z), (hi - b) * (z - a))
        if scen == "SBV":
            return (t_lo + t_hi) / math.pi
        if scen == "SBS":
            return 1.0 - t_lo / math.pi + t_hi / math.pi
        if scen == "VBV":
            t_a = angle(a * (b - z), b * (z - a))
            return (t_lo + t_hi) / math.pi - 2 * t_a / math.pi
        t_b = angle(b * (z - a), a * (b - z))
        return (t_hi - t_lo) / math.pi + 2 * t_b / math.pi

    return rho


def _distance_to_support(support: BandSupport, z: complex) -> float:
    s_lo, s_hi = support.measure_support()
    re, im = z.real, z.imag
    dx = max(s_lo - re, re - s_hi, 0.0)
    return math.hypot(dx, im)


def resolvent(support: BandSupport, ctx=None) -> Callable[[complex], complex]:
    """Closed-form resolvent W on the complement of the measure support.

    Principal branches throughout; saturated gaps enter via explicit
    log-cut prefactors.  Pass an mpmath context for evaluations beyond
    double precision (large-|z| expansion checks).
    """
    ctx = resolve(ctx)
    lo, hi = support.geometry.ordered()
    x = ctx.mpf(support.x)
    lam, mu = ctx.mpf(lo), ctx.mpf(hi)
    scen = support.scenario
    sym = support.geometry.is_symmetric
    if ctx.dps > 17 and not support.collapsed:
        a, b = _endpoint_values(support.geometry, support.x, scen, ctx)
    else:
        a, b = ctx.mpf(support.a), ctx.mpf(support.b)

    sa, sb = ctx.sqrt(a), ctx.sqrt(b)
    sla, slb = ctx.sqrt(lam - a), ctx.sqrt(lam - b)
    sma, smb = ctx.sqrt(mu - a), ctx.sqrt(mu - b)
    sba = ctx.sqrt(b - a)
    half_logx = ctx.log(x) / 2

    def w(z) -> complex:
        if _distance_to_support(support, complex(z)) < CUT_GUARD:
            raise DomainError(f"z = {z} lies within {CUT_GUARD} of the measure support")
        z = ctx.mpc(z)
        cza = ctx.csqrt(z - a)
        czb = ctx.csqrt(z - b)
        if sym:
            d_plus = sla * czb + slb * cza
            if scen == "SBV":
                return half_logx + 2 * ctx.clog(sba * ctx.csqrt(z) / d_plus)
            if scen == "VBV":
                return half_logx + 2 * ctx.clog((sa * czb + sb * cza) / d_plus)
            return half_logx + 2 * ctx.clog(
                (sa * czb + sb * cza) / (sba * ctx.csqrt(z - lam))
            )
        d_mu = sma * czb + smb * cza
        d_lam = sla * czb + slb * cza
        d_lam_m = sla * czb - slb * cza
        if scen == "SBV":
            num = sba * ctx.csqrt(z)
            return half_logx + ctx.clog(num / d_lam) + ctx.clog(num / d_mu)
        if scen == "SBS":
            num = sba * ctx.csqrt(z)
            return half_logx + ctx.clog(num / d_lam_m) + ctx.clog(num / d_mu)
        num = sa * czb + sb * cza
        if scen == "VBV":
            return half_logx + ctx.clog(num / d_lam) + ctx.clog(num / d_mu)
        return half_logx + ctx.clog(num / d_lam_m) + ctx.clog(num / d_mu)

    return w


def potential(geom: ScaledGeometry, x: float, z: float, allow_walls: bool = False) -> float:
    """Confining potential of the log-gas on (0, gamma).

    At the walls the potential extends continuously (u log u -> 0);
    request those values explicitly with allow_walls.
    """
    lo, hi = geom.ordered()
    if allow_walls:
        if not 0 <= z <= lo:
            raise DomainError(f"z must lie in [0, {lo}]")
    elif not 0 < z < lo:
        raise DomainError(f"z must lie strictly inside (0, {lo})")
    if x <= 0:
        raise DomainError("x must be positive")

    def ell(u: float) -> float:
        return u * math.log(u) if u > 0 else 0.0

    return (
        2 * ell(z)
        + ell(lo - z) - ell(lo)
        + ell(hi - z) - ell(hi)
        + z * math.log(x)
    )


def potential_derivative(geom: ScaledGeometry, x: float, z: float) -> float:
    """Derivative of the confining potential; diverges at both walls."""
    lo, hi = geom.ordered()
    if not 0 < z < lo:
        raise DomainError(f"z must lie strictly inside (0, {lo})")
    if x <= 0:
        raise DomainError("x must be positive")
    return 2 * math.log(z) - math.log(lo - z) - math.log(hi - z) + math.log(x)


def _effective_band_potential_derivative(support: BandSupport) -> Callable[[float], float]:
    """Right-hand side of the saddle-point problem for the auxiliary
    resolvent, on the open band: the potential derivative minus the
    log terms already carried by the saturated-gap prefactors."""
    geom, x = support.geometry, support.x
    a, b = support.a, support.b
    gamma = support.gamma
    scen = support.scenario

    def u_eff(u: float) -> float:
        val = potential_derivative(geom, x, u)
        if scen in ("SBV", "SBS"):
            val -= 2 * math.log(u / (u - a))
        if scen in ("VBS", "SBS"):
            val -= 2 * math.log((b - u) / (gamma - u))
        return val

    return u_eff


def _gap_log_terms(support: BandSupport, z: complex) -> complex:
    a, b = support.a, support.b
    gamma = support.gamma
    out = 0j
    if support.scenario in ("SBV", "SBS"):
        out += cmath.log(z / (z - a))
    if support.scenario in ("VBS", "SBS"):
        out += cmath.log((z - b) / (z - gamma))
    return out


def resolvent_quadrature(
    geom: ScaledGeometry,
    support: BandSupport,
    z: complex,
    target: float = 1e-10,
) -> complex:
    """Resolvent via the one-cut singular integral, as a numeric oracle.

    The cosine substitution u = (a+b)/2 + (b-a)/2 cos(theta) removes the
    inverse-square-root edge singularities; the remaining (integrable)
    log singularities are left to adaptive quadrature.  Raises when the
    error estimate exceeds the target.
    """
    if geom.ordered() != support.geometry.ordered():
        raise DomainError("geometry does not match the support")
    a, b = support.a, support.b
    if _distance_to_support(support, complex(z)) < CUT_GUARD:
        raise DomainError(f"z = {z} lies within {CUT_GUARD} of the measure support")
    u_eff = _effective_band_potential_derivative(support)
    mid = (a + b) / 2
    rad = (b - a) / 2
    z = complex(z)

    def integrand(theta: float) -> complex:
        u = mid + rad * math.cos(theta)
        u = min(max(u, a), b)
        if u <= a or u >= b:
            return 0j
        return u_eff(u) / (z - u)

    with warnings.catch_warnings():
        # the requested tolerance deliberately undershoots; the achieved
        # estimate is checked against `target` below
        warnings.simplefilter("ignore", IntegrationWarning)
        re, re_err = quad(lambda th: integrand(th).real, 0.0, math.pi,
                          epsabs=1e-13, epsrel=1e-13, limit=400)
        im, im_err = quad(lambda th: integrand(th).imag, 0.0, math.pi,
                          epsabs=1e-13, epsrel=1e-13, limit=400)
    achieved = re_err + im_err
    if achieved > target:
        raise QuadratureError(achieved, target)
    prefactor = cmath.sqrt(z - a) * cmath.sqrt(z - b) / (2 * math.pi)
    return _gap_log_terms(support, z) + prefactor * complex(re, im)


def first_moment(support: BandSupport, ctx=None):
    """Mean particle position, by the scenario's closed form."""
    ctx = resolve(ctx)
    lo, hi = support.geometry.ordered()
    lam, mu = ctx.mpf(lo), ctx.mpf(hi)
    x = ctx.mpf(support.x)
    scen = support.scenario
    if support.geometry.is_symmetric:
        if scen == "SBV":
            return ctx.mpf(1) / 2 + (lam - 1) ** 2 / (x - 1)
        if scen == "VBV":
            return (2 * lam - 1) / (2 * (1 + ctx.sqrt(x))) + ctx.mpf(1) / 4
        return lam**2 / 2 - (lam - 1) ** 2 / 2 * (1 + x) / (1 - x)
    if scen in ("SBV", "SBS"):
        return (lam - 1) * (mu - 1) / (x - 1) + ctx.mpf(1) / 2
    t = t_of_x(support.geometry, x, ctx)
    num = (
        t**3
        + (8 * lam * mu - 3 * lam - 3 * mu + 2) * t**2
        - 3 * (mu - lam) ** 2 * t
        + (mu - lam) ** 2 * (lam + mu - 2)
    )
    return num / (4 * t**2 * (lam + mu + t))


def endpoint_residuals(support: BandSupport) -> tuple[float, float]:
    """Residuals of the two end-point equations at (a, b), as printed
    for the scenario in force (left side minus right side)."""
    a, b = support.a, support.b
    lo, hi = support.geometry.ordered()
    x = support.x
    scen = support.scenario
    sa, sb = math.sqrt(a), math.sqrt(b)
    sla, slb = math.sqrt(lo - a), math.sqrt(lo - b)
    sma, smb = math.sqrt(hi - a), math.sqrt(hi - b)
    if support.geometry.is_symmetric:
        lam = lo
        if scen == "SBV":
            r1 = (sla + slb) / math.sqrt(b - a) - x**0.25
            r2 = lam - sla * slb - 1
        elif scen == "VBV":
            r1 = (sla + slb) / (sa + sb) - x**0.25
            r2 = lam - sa * sb - sla * slb - 1
        else:
            r1 = math.sqrt(b - a) / (sa + sb) - x**0.25
            r2 = lam - sa * sb - 1
        return (r1, r2)
    sx = math.sqrt(x)
    if scen == "SBV":
        r1 = (sma + smb) / (sla - slb) - sx
        r2 = hi + lo - sma * smb - sla * slb - 2
    elif scen == "SBS":
        r1 = (sma + smb) / (sla + slb) - sx
        r2 = hi + lo - sma * smb + sla * slb - 2
    else:
        nu = 1 if scen == "VBV" else -1
        r1 = (sb - sa) / (sb + sa) * (sma + smb) / (sla - nu * slb) - sx
        r2 = lo + hi - nu * sla * slb - sma * smb - 2 - 2 * sa * sb
    return (r1, r2)


def _band_quadrature(support: BandSupport, f: Callable[[float], float]) -> float:
    """Integral of f(z) rho(z) over the open band, cosine-substituted."""
    a, b = support.a, support.b
    if support.collapsed:
        return 0.0
    rho = density(support)
    mid = (a + b) / 2
    rad = (b - a) / 2

    def integrand(theta: float) -> float:
        z = mid + rad * math.cos(theta)
        z = min(max(z, a), b)
        if z <= a or z >= b:
            return 0.0
        return f(z) * rho(z) * rad * math.sin(theta)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        val, _ = quad(integrand, 0.0, math.pi, epsabs=1e-12, epsrel=1e-12, limit=300)
    return val


def density_normalization(support: BandSupport) -> float:
    """Total mass: band integral by quadrature plus exact gap lengths."""
    total = _band_quadrature(support, lambda z: 1.0)
    for g_lo, g_hi, val in support.gaps():
        total += val * (g_hi - g_lo)
    return total


def density_moment(support: BandSupport) -> float:
    """First moment of the density: band quadrature plus exact gap parts."""
    total = _band_quadrature(support, lambda z: z)
    for g_lo, g_hi, val in support.gaps():
        total += val * (g_hi**2 - g_lo**2) / 2
    return total


def measure_closure(support: BandSupport) -> MeasureClosure:
    """Bundle density, resolvent, and first moment for one scenario."""
    return MeasureClosure(
        support=support,
        density=density(support),
        resolvent=resolvent(support),
        first_moment=float(first_moment(support)),
    )


def stationary_point(geom: ScaledGeometry, x: float) -> float:
    """Interior minimum of the confining potential.

    The root of the potential derivative inside (0, gamma); for x = 1
    this is the harmonic-mean point lam*mu/(lam+mu).
    """
    lo, hi = geom.ordered()
    if x <= 0:
        raise DomainError("x must be positive")
    if x == 1:
        return lo * hi / (lo + hi)
    s = lo + hi
    disc = s * s + 4 * lo * hi * (x - 1)
    return (-s + math.sqrt(disc)) / (2 * (x - 1))


def cauchy_edge_integral(a: float, b: float, z: complex) -> complex:
    """Closed form of the bare edge-kernel integral
    int_a^b du / ((z-u) sqrt((u-a)(b-u))) = pi / (sqrt(z-a) sqrt(z-b))."""
    return math.pi / (cmath.sqrt(z - a) * cmath.sqrt(z - b))


def log_ratio_edge_integral(a: float, b: float, c: float, d: float, z: complex) -> complex:
    """Edge-kernel integral of log((u-c)/(u-d)) with c, d on one side
    of the band (both <= a or both >= b)."""
    pref = 2 * math.pi / (cmath.sqrt(z - a) * cmath.sqrt(z - b))
    cza, czb = cmath.sqrt(z - a), cmath.sqrt(z - b)
    if c <= a and d <= a:
        num = math.sqrt(a - c) * czb + math.sqrt(b - c) * cza
        den = math.sqrt(a - d) * czb + math.sqrt(b - d) * cza
    elif c >= b and d >= b:
        num = math.sqrt(c - a) * czb + math.sqrt(c - b) * cza
        den = math.sqrt(d - a) * czb + math.sqrt(d - b) * cza
    else:
        raise DomainError("c and d must lie on the same side of the band")
    return pref * cmath.log(num / den)


def log_mixed_edge_integral(a: float, b: float, c: float, d: float, z: complex) -> complex:
    """Edge-kernel integral of log((u-c)/(d-u)) with c <= a <= b <= d."""
    if not (c <= a and d >= b):
        raise DomainError("need c <= a and d >= b")
    cza, czb = cmath.sqrt(z - a), cmath.sqrt(z - b)
    pref = 2 * math.pi / (cza * czb)
    num = math.sqrt(a - c) * czb + math.sqrt(b - c) * cza
    den = math.sqrt(d - a) * czb + math.sqrt(d - b) * cza
    return pref * cmath.log(num / den)


def sqrt_sum_log_jump(alpha: float, beta: float, a: float, b: float, u: float) -> complex:
    """Jump across the band of log(sqrt(alpha(z-a)) + sqrt(beta(z-b))):
    the +i0 boundary value minus the -i0 one, at u in (a, b)."""
    if not a < u < b:
        raise DomainError("u must lie inside (a, b)")
    return 2j * math.atan(math.sqrt((beta * (b - u)) / (alpha * (u - a))))
