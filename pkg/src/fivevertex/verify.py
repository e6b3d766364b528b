"""Cross-level verification harness.

Ties the exact finite-size layer to the asymptotic layer: exact
equivalence of the two determinant-factor representations, finite-size
convergence of (1/N^2) log P to its closed-form limit, transition-order
probes at the critical points, and full-sweep invariant suites with
machine-readable reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath

from . import equilibrium as eq
from .asymptotics import (
    ScaledGeometry,
    classify,
    critical_values,
    loggas_free_energy,
    macmahon_growth,
    polynomial_growth,
    reoriented,
    t_of_x,
    x_of_t,
)
from .errors import DomainError, FiveVertexError
from .exact import (
    DEFAULT_WORK_BUDGET,
    FiniteModel,
    _hankel_entry_coeffs,
    binomial,
    normalization_constant,
    partition_polynomial,
    plane_partition_count,
    tau_hankel,
    tau_loggas,
)
from .precision import MPContext

DEFAULT_X_VALUES = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(1),
    Fraction(2),
    Fraction(3),
)


# ---------------------------------------------------------------------------
# report plumbing

@dataclass
class CaseResult:
    key: str
    status: str  # "pass" | "fail"
    residuals: dict[str, float] = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class SuiteReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    def add(self, key: str, ok: bool, residuals: dict | None = None, detail: str = ""):
        clean = {k: float(v) for k, v in (residuals or {}).items()}
        self.cases.append(CaseResult(key, "pass" if ok else "fail", clean, detail))

    @property
    def n_pass(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def n_fail(self) -> int:
        return len(self.cases) - self.n_pass

    @property
    def passed(self) -> bool:
        return self.n_fail == 0

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "n_pass": self.n_pass,
            "n_fail": self.n_fail,
            "cases": [
                {
                    "key": c.key,
                    "status": c.status,
                    "residuals": dict(sorted(c.residuals.items())),
                    "detail": c.detail,
                }
                for c in sorted(self.cases, key=lambda c: c.key)
            ],
        }


# ---------------------------------------------------------------------------
# brute-force plane-partition oracle

def enumerate_plane_partitions(a: int, b: int, c: int) -> int:
    """Count plane partitions in an a x b x c box by direct enumeration.

    Rows of the height array are nonincreasing, columns are
    nonincreasing, entries bounded by c.  Exponential; intended only as
    an oracle at desk scale.
    """
    if min(a, b, c) < 0:
        raise DomainError("box sides must be nonnegative")
    if a == 0 or b == 0 or c == 0:
        return 1

    def rows_below(bound: tuple[int, ...]):
        # nonincreasing rows dominated elementwise by `bound`
        def extend(prefix: list[int], i: int):
            if i == b:
                yield tuple(prefix)
                return
            hi = min(bound[i], prefix[-1] if prefix else c)
            for v in range(hi, -1, -1):
                prefix.append(v)
                yield from extend(prefix, i + 1)
                prefix.pop()

        yield from extend([], 0)

    def count(level: int, bound: tuple[int, ...]) -> int:
        if level == a:
            return 1
        return sum(count(level + 1, row) for row in rows_below(bound))

    return count(0, (c,) * b)


# ---------------------------------------------------------------------------
# sweep of the two exact representations

def sweep_models(
    max_n: int = 4,
    l_range: tuple[int, int] = (3, 9),
    m_range: tuple[int, int] = (2, 9),
) -> Iterable[FiniteModel]:
    for L in range(l_range[0], l_range[1] + 1):
        for M in range(m_range[0], m_range[1] + 1):
            for N in range(1, min(M, L - 1, max_n) + 1):
                yield FiniteModel(N=N, M=M, L=L)


def equivalence_sweep(
    max_n: int = 4,
    l_range: tuple[int, int] = (3, 9),
    m_range: tuple[int, int] = (2, 9),
    x_values: Sequence[Fraction] = DEFAULT_X_VALUES,
    budget: int = DEFAULT_WORK_BUDGET,
) -> SuiteReport:
    """Exact rational equality of the Hankel and log-gas representations."""
    report = SuiteReport("equivalence")
    for model in sweep_models(max_n, l_range, m_range):
        key = f"N={model.N},M={model.M},L={model.L}"
        mismatch = ""
        for x in x_values:
            h = tau_hankel(model, x)
            g = tau_loggas(model, x, budget=budget)
            if h != g:
                mismatch = f"x={x}: hankel={h} loggas={g}"
                break
        report.add(key, not mismatch, {"x_checked": len(x_values)}, mismatch)
    return report


# ---------------------------------------------------------------------------
# finite-size convergence

@dataclass(frozen=True)
class ConvergenceRecord:
    N: int
    L: int
    M: int
    x: float
    finite_value: float
    asymptotic_value: float
    error: float
    precision_bits: int


def _log_polynomial_mp(model: FiniteModel, x: Fraction, min_bits: int = 200,
                       cap_bits: int = 16000) -> tuple[mpmath.mpf, int]:
    """log P(1/x) through the Hankel determinant in mpmath floats.

    Matrix entries are assembled exactly as rationals before conversion,
    so only the determinant itself is inexact; its precision is raised
    until two consecutive evaluations of log(det) agree to 1e-10.
    """
    n = model.N
    per_power = _hankel_entry_coeffs(model)
    y = 1 / Fraction(x)
    ypow = [y**k for k in range(model.max_site + 1)]
    values = [sum((c * yk for c, yk in zip(row, ypow)), Fraction(0)) for row in per_power]

    def log_det_at(bits: int) -> mpmath.mpf:
        mpmath.mp.prec = bits
        mat = mpmath.matrix(n)
        for i in range(n):
            for j in range(n):
                v = values[i + j]
                mat[i, j] = mpmath.mpf(v.numerator) / mpmath.mpf(v.denominator)
        det = mpmath.det(mat)
        if det <= 0:
            return mpmath.mpf("nan")
        return mpmath.log(det)

    bits = max(min_bits, 64)
    prev = log_det_at(bits)
    while True:
        bits2 = 2 * bits
        if bits2 > cap_bits:
            raise FiveVertexError(
                f"determinant precision exceeded {cap_bits} bits for {model}"
            )
        cur = log_det_at(bits2)
        if mpmath.isfinite(prev) and mpmath.isfinite(cur) and abs(cur - prev) < 1e-10:
            break
        prev, bits = cur, bits2
    const = math.factorial(n) * normalization_constant(model)
    log_const = mpmath.log(mpmath.mpf(const.numerator)) - mpmath.log(mpmath.mpf(const.denominator))
    log_x = mpmath.log(mpmath.mpf(x.numerator)) - mpmath.log(mpmath.mpf(x.denominator))
    log_p = n * (n - 1) / 2 * log_x + log_const + cur
    return log_p, bits2


def convergence_study(
    geom: ScaledGeometry,
    x: float,
    n_list: Sequence[int] = (8, 16, 32),
    min_bits: int = 200,
) -> list[ConvergenceRecord]:
    """Finite-size values (1/N^2) log P against the closed-form limit."""
    target = float(polynomial_growth(geom, x))
    records = []
    for n in n_list:
        L = math.floor(geom.lam * n)
        M = math.floor(geom.mu * n)
        model = FiniteModel(N=n, M=M, L=L)
        log_p, bits = _log_polynomial_mp(model, Fraction(x), min_bits)
        finite = float(log_p) / n**2
        records.append(
            ConvergenceRecord(
                N=n, L=L, M=M, x=float(x),
                finite_value=finite,
                asymptotic_value=target,
                error=abs(finite - target),
                precision_bits=bits,
            )
        )
    return records


# ---------------------------------------------------------------------------
# transition order

@dataclass(frozen=True)
class TransitionProbe:
    x_star: float
    stencil_h: float
    third_derivative_left: float
    third_derivative_right: float
    jump: float
    value_jump: float
    first_derivative_jump: float
    second_derivative_jump: float


def transition_order(
    geom: ScaledGeometry,
    which: str = "x_c",
    h_list: Sequence[float] = (1e-2, 1e-3, 1e-4),
    dps: int = 60,
) -> list[TransitionProbe]:
    """One-sided derivative jumps of the free energy at a critical point.

    One-sided stencils anchored at the critical value estimate the
    limiting derivatives from each side.  Stencil widths are relative to
    the critical value (absolute step h * x_star): the critical points
    range over two orders of magnitude and a multiplicative step keeps
    the truncation error commensurate at all of them.  Evaluation runs
    in mpmath because the third-derivative jumps sit near
    double-precision noise at the smallest stencils.
    """
    ctx = MPContext(dps)
    cv = critical_values(geom, ctx)
    x_star = getattr(cv, which, None)
    if x_star is None:
        raise DomainError(f"critical point {which!r} not defined for this geometry")

    cache: dict = {}

    def f(xx):
        if xx not in cache:
            cache[xx] = loggas_free_energy(geom, xx, ctx)
        return cache[xx]

    probes = []
    for h in h_list:
        s_r = ctx.mpf(h) * x_star
        out = {}
        for label, s in (("right", s_r), ("left", -s_r)):
            f0, f1, f2_, f3, f4 = (f(x_star + j * s) for j in range(5))
            d1 = (-ctx.mpf(3) / 2 * f0 + 2 * f1 - f2_ / 2) / s
            d2 = (2 * f0 - 5 * f1 + 4 * f2_ - f3) / s**2
            d3 = (-ctx.mpf(5) / 2 * f0 + 9 * f1 - 12 * f2_ + 7 * f3 - ctx.mpf(3) / 2 * f4) / s**3
            out[label] = (d1, d2, d3)
        value_jump = f(x_star + s_r) - 2 * f(x_star) + f(x_star - s_r)
        probes.append(
            TransitionProbe(
                x_star=float(x_star),
                stencil_h=float(h),
                third_derivative_left=float(out["left"][2]),
                third_derivative_right=float(out["right"][2]),
                jump=float(out["right"][2] - out["left"][2]),
                value_jump=float(value_jump),
                first_derivative_jump=float(out["right"][0] - out["left"][0]),
                second_derivative_jump=float(out["right"][1] - out["left"][1]),
            )
        )
    return probes


# ---------------------------------------------------------------------------
# scenario scan

@dataclass(frozen=True)
class ScanRow:
    x: float
    scenario: str
    regime: str
    a: float
    b: float
    first_moment: float
    free_energy: float
    growth: float
    normalization_residual: float
    endpoint_residual: float
    on_boundary: bool


def scenario_scan(geom: ScaledGeometry, x_grid: Sequence[float]) -> list[ScanRow]:
    """One classified, residual-checked row per grid point."""
    rows = []
    for x in x_grid:
        report = classify(geom, x)
        support = eq.band_endpoints(geom, x)
        r1, r2 = eq.endpoint_residuals(support)
        rows.append(
            ScanRow(
                x=float(x),
                scenario=report.scenario,
                regime=report.regime,
                a=support.a,
                b=support.b,
                first_moment=float(eq.first_moment(support)),
                free_energy=float(loggas_free_energy(geom, x)),
                growth=float(polynomial_growth(geom, x)),
                normalization_residual=abs(eq.density_normalization(support) - 1.0),
                endpoint_residual=max(abs(r1), abs(r2)),
                on_boundary=report.on_boundary,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# named suites

def suite_equivalence(max_n: int = 4, budget: int = DEFAULT_WORK_BUDGET) -> SuiteReport:
    return equivalence_sweep(max_n=max_n, budget=budget)


def suite_structure(max_n: int = 4) -> SuiteReport:
    """Structural identities of the normalized polynomial factor."""
    report = SuiteReport("structure")
    for model in sweep_models(max_n):
        key = f"N={model.N},M={model.M},L={model.L}"
        problems = []
        poly = partition_polynomial(model)
        if poly.constant_term != 1:
            problems.append("constant term != 1")
        if poly.degree != model.degree:
            problems.append(f"degree {poly.degree} != {model.degree}")
        mirror = partition_polynomial(FiniteModel(N=model.N, M=model.L - 1, L=model.M + 1))
        if mirror.coefficients != poly.coefficients:
            problems.append("L <-> M+1 symmetry broken")
        n, m_, l_ = model.N, model.M, model.L
        if poly(1) * binomial(m_, n) != plane_partition_count(l_ - n, n, m_ - n):
            problems.append("value at 1 mismatches plane-partition count")
        if l_ <= m_ + 1:
            expected = Fraction(plane_partition_count(n, m_ - l_ + 1, l_ - n), binomial(m_, n))
            if poly.leading_coefficient != expected:
                problems.append("leading coefficient (wide case) mismatch")
        if l_ >= m_ + 1:
            expected = Fraction(plane_partition_count(n, l_ - m_ - 1, m_ - n + 1), binomial(l_ - 1, n))
            if poly.leading_coefficient != expected:
                problems.append("leading coefficient (tall case) mismatch")
        report.add(key, not problems, {"degree": poly.degree}, "; ".join(problems))
    return report


def suite_macmahon(limit: int = 3) -> SuiteReport:
    """Product formula against brute-force enumeration, plus symmetry."""
    report = SuiteReport("macmahon")
    for a in range(limit + 1):
        for b in range(limit + 1):
            for c in range(limit + 1):
                formula = plane_partition_count(a, b, c)
                brute = enumerate_plane_partitions(a, b, c)
                symmetric = len(
                    {
                        plane_partition_count(*perm)
                        for perm in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]
                    }
                ) == 1
                ok = formula == brute and symmetric
                report.add(
                    f"box={a}x{b}x{c}", ok, {"count": formula},
                    "" if ok else f"formula={formula} brute={brute} symmetric={symmetric}",
                )
    return report


#: (lam, mu, x, expected scenario) covering every scenario on both branches
EQUILIBRIUM_GRID = (
    (2.0, 2.0, 16.0, "SBV"),
    (2.0, 2.0, 1.0, "VBV"),
    (2.0, 2.0, 0.05, "VBS"),
    (1.5, 1.5, 9.0, "SBV"),
    (1.5, 1.5, 2.0, "VBV"),
    (1.5, 1.5, 0.1, "VBS"),
    (2.0, 3.0, 16.0, "SBV"),
    (2.0, 3.0, 5.0, "VBV"),
    (2.0, 3.0, 0.5, "VBS"),
    (1.2, 3.0, 12.0, "SBV"),
    (1.2, 3.0, 8.0, "SBS"),
    (1.2, 3.0, 3.0, "VBS"),
    (1.5, 2.5, 4.0, "VBV"),
    (1.5, 2.5, 1.0, "VBS"),
)


def suite_equilibrium(configs=EQUILIBRIUM_GRID) -> SuiteReport:
    """Normalization, constraint, residuals, and the resolvent trio."""
    report = SuiteReport("equilibrium")
    mp40 = MPContext(40)
    for lam, mu, x, expected in configs:
        geom = ScaledGeometry(lam, mu)
        key = f"lam={lam},mu={mu},x={x}"
        support = eq.band_endpoints(geom, x)
        res: dict[str, float] = {}
        problems = []
        if support.scenario != expected:
            problems.append(f"scenario {support.scenario} != {expected}")

        res["norm"] = abs(eq.density_normalization(support) - 1.0)
        if res["norm"] > 1e-7:
            problems.append("normalization")

        rho = eq.density(support)
        gamma = support.gamma
        slack = min(
            min(rho(i * gamma / 999), 1.0 - rho(i * gamma / 999)) for i in range(1000)
        )
        res["constraint_slack"] = slack
        if slack < -1e-10:
            problems.append("constraint")

        r1, r2 = eq.endpoint_residuals(support)
        res["endpoint"] = max(abs(r1), abs(r2))
        if res["endpoint"] > 1e-10:
            problems.append("endpoint residuals")

        e_val = float(eq.first_moment(support))
        w_mp = eq.resolvent(support, mp40)
        large = 0.0
        for z in (1e6, 1e6j):
            wz = w_mp(z)
            zc = mp40.mpc(z)
            large = max(large, abs(zc * wz - 1 - e_val / zc))
        res["largez"] = large
        if large > 1e-4 / 1e6:
            problems.append("large-z expansion")

        w = eq.resolvent(support)
        quad_dev = 0.0
        for z in (support.b + 1.0, support.b + 1.0j):
            quad_dev = max(
                quad_dev, abs(eq.resolvent_quadrature(geom, support, z) - w(z))
            )
        res["quadrature"] = quad_dev
        if quad_dev > 1e-6:
            problems.append("quadrature vs closed form")

        mid = (support.a + support.b) / 2
        eps = 1e-9
        disc = (w(complex(mid, eps)) - w(complex(mid, -eps))) / (2j * math.pi)
        res["density_recovery"] = abs(-disc - rho(mid))
        if res["density_recovery"] > 1e-8:
            problems.append("density recovery")

        eps2 = 1e-10
        spe = w(complex(mid, eps2)) + w(complex(mid, -eps2)) - eq.potential_derivative(geom, x, mid)
        res["saddle_point"] = abs(spe)
        if res["saddle_point"] > 1e-8:
            problems.append("saddle-point equation")

        report.add(key, not problems, res, "; ".join(problems))
    return report


def _x_dphi(geom: ScaledGeometry, x: float, h: float = 1e-3) -> float:
    """x d(Phi)/dx by Richardson-extrapolated log-space differences."""

    def slope(step: float) -> float:
        up = float(loggas_free_energy(geom, x * math.exp(step)))
        dn = float(loggas_free_energy(geom, x * math.exp(-step)))
        return (up - dn) / (2 * step)

    d1 = slope(h)
    d2 = slope(h / 2)
    return (4 * d2 - d1) / 3


def suite_moments(configs=EQUILIBRIUM_GRID) -> SuiteReport:
    """First-moment consistency: closed form vs x dPhi/dx vs quadrature."""
    report = SuiteReport("moments")
    for lam, mu, x, _ in configs:
        geom = ScaledGeometry(lam, mu)
        key = f"lam={lam},mu={mu},x={x}"
        support = eq.band_endpoints(geom, x)
        e_closed = float(eq.first_moment(support))
        res = {
            "vs_dphi": abs(e_closed - _x_dphi(geom, x)),
            "vs_quadrature": abs(e_closed - eq.density_moment(support)),
        }
        ok = res["vs_dphi"] <= 1e-6 and res["vs_quadrature"] <= 1e-7
        report.add(key, ok, res)
    return report


SPECIAL_VALUE_GEOMETRIES = ((2.0, 2.0), (1.5, 1.5), (2.0, 3.0), (1.2, 3.0), (1.5, 2.5))


def suite_special_values(geometries=SPECIAL_VALUE_GEOMETRIES) -> SuiteReport:
    """Exactly known values and limits of the free-energy density."""
    report = SuiteReport("special-values")
    for lam, mu in geometries:
        geom = ScaledGeometry(lam, mu)
        key = f"lam={lam},mu={mu}"
        lo, hi = geom.ordered()
        res = {}
        res["at_one"] = abs(
            float(loggas_free_energy(geom, 1.0)) + float(macmahon_growth(lam - 1, mu - 1))
        )
        x_big = 1e8
        res["at_infinity"] = abs(
            float(loggas_free_energy(geom, x_big)) - 0.5 * math.log(x_big)
        )
        x_small = 1e-8
        limit = float(loggas_free_energy(geom, x_small)) - (lo - 0.5) * math.log(x_small)
        target = 0.0 if geom.is_symmetric else -float(macmahon_growth(hi - lo, lo - 1))
        res["at_zero"] = abs(limit - target)
        res["orientation"] = abs(
            float(loggas_free_energy(geom, 2.0))
            - float(loggas_free_energy(reoriented(geom), 2.0))
        )
        res["growth_at_one"] = abs(
            float(polynomial_growth(geom, 1.0)) - float(macmahon_growth(lam - 1, mu - 1))
        )
        ok = (
            res["at_one"] <= 1e-10
            and res["at_infinity"] <= 1e-6
            and res["at_zero"] <= 1e-5
            and res["orientation"] <= 1e-12
            and res["growth_at_one"] <= 1e-10
        )
        report.add(key, ok, res)
    return report


TRANSITION_GEOMETRIES = (
    (2.0, 2.0, ("x_c", "x_c_tilde"), ()),
    (2.0, 3.0, ("x_c",), ("x2",)),
    (1.2, 3.0, ("x_c",), ("x1",)),
)


def suite_transitions(cases=TRANSITION_GEOMETRIES,
                      h_list: Sequence[float] = (1e-2, 1e-3, 1e-4)) -> SuiteReport:
    """Third-order signature at x_c; smoothness at the soft-wall changes."""
    report = SuiteReport("transitions")
    for lam, mu, third_order_points, smooth_points in cases:
        geom = ScaledGeometry(lam, mu)
        for which in third_order_points:
            key = f"lam={lam},mu={mu},{which}"
            probes = transition_order(geom, which, h_list)
            last = probes[-1]
            res = {
                "jump3": last.jump,
                "jump3_variation": max(
                    abs(p.jump - last.jump) for p in probes
                ) / abs(last.jump) if last.jump else float("inf"),
                "jump0": abs(last.value_jump),
                "jump1": abs(last.first_derivative_jump),
                "jump2": abs(last.second_derivative_jump),
            }
            # lower-order jumps must shrink under refinement (true decay is
            # h^2 per step; 5e-2 of the largest earlier probe leaves room
            # for accidental near-cancellations at one stencil), or sit at
            # the arithmetic floor outright
            floor = 1e-12 * max(1.0, abs(last.jump))
            lower_to_zero = True
            for attr in ("value_jump", "first_derivative_jump", "second_derivative_jump"):
                ref = max(abs(getattr(p, attr)) for p in probes[:-1])
                if abs(getattr(last, attr)) > max(5e-2 * ref, floor):
                    lower_to_zero = False
            ok = abs(last.jump) > 1e-8 and res["jump3_variation"] <= 0.1 and lower_to_zero
            report.add(key, ok, res)
        for which in smooth_points:
            key = f"lam={lam},mu={mu},{which}"
            probes = transition_order(geom, which, h_list)
            last = probes[-1]
            res = {"jump3": abs(last.jump), "jump2": abs(last.second_derivative_jump)}
            ok = abs(last.jump) <= 1e-8
            report.add(key, ok, res)
    return report


CONVERGENCE_CASES = (
    (2.0, 2.0, (0.5, 1.0, 2.0)),
    (2.0, 3.0, (0.5, 1.0, 2.0)),
)


def suite_convergence(cases=CONVERGENCE_CASES, n_list: Sequence[int] = (8, 16, 32),
                      min_bits: int = 240) -> SuiteReport:
    """Finite-size error decreasing in N and small at the largest N."""
    report = SuiteReport("convergence")
    for lam, mu, x_values in cases:
        geom = ScaledGeometry(lam, mu)
        for x in x_values:
            key = f"lam={lam},mu={mu},x={x}"
            records = convergence_study(geom, x, n_list, min_bits)
            errors = [r.error for r in records]
            decreasing = all(e1 > e2 for e1, e2 in zip(errors, errors[1:]))
            res = {f"err_N{r.N}": r.error for r in records}
            ok = decreasing and errors[-1] <= 0.05
            report.add(key, ok, res, "" if ok else f"errors={errors}")
    return report


PARAMETRIC_PAIRS = ((2.0, 3.0), (1.2, 3.0), (1.5, 2.5))


def suite_parametric(pairs=PARAMETRIC_PAIRS, count: int = 100) -> SuiteReport:
    """Parametric-solution identities, monotonicity, and round trips."""
    report = SuiteReport("parametric")
    for lam, mu in pairs:
        geom = ScaledGeometry(lam, mu)
        key = f"lam={lam},mu={mu}"
        cv = critical_values(geom)
        t0, t_hi = cv.t0, 10 * cv.t_c
        worst = 0.0
        monotone = True
        prev_x = 0.0
        for j in range(1, count + 1):
            t = t0 + (t_hi - t0) * j / count
            state = eq.parametric_state(geom, t)
            worst = max(
                worst,
                abs(state.A_plus * state.A_minus - state.B_plus * state.B_minus),
                abs(state.B_plus * state.B_minus - state.C_plus * state.C_minus),
                abs(state.A_plus + state.A_minus - (lam - state.B_plus - state.B_minus)),
                abs(state.A_plus + state.A_minus - (mu - state.C_plus - state.C_minus)),
                abs(2 * state.A_plus + state.B_plus + state.C_plus - state.N_plus),
                abs(2 * state.A_minus + state.B_minus + state.C_minus - state.N_minus),
                abs(state.A_minus * state.C_plus / (state.A_plus * state.B_minus)
                    - x_of_t(geom, t)),
            )
            x_here = x_of_t(geom, t)
            if x_here <= prev_x:
                monotone = False
            prev_x = x_here
        roundtrip = 0.0
        for k in range(25):
            x = 10 ** (-3 + 6 * k / 24)
            t = t_of_x(geom, x)
            roundtrip = max(roundtrip, abs(x_of_t(geom, t) - x) / max(1.0, x))
        res = {"relations": worst, "roundtrip": roundtrip}
        ok = worst <= 1e-12 and monotone and roundtrip <= 1e-12
        report.add(key, ok, res, "" if monotone else "x_of_t not increasing")
    return report


REGIME_GEOMETRIES = ((2.0, 2.0), (2.0, 3.0), (1.2, 3.0), (1.5, 2.5))


def suite_regimes(geometries=REGIME_GEOMETRIES) -> SuiteReport:
    """Branch structure of the growth exponent and boundary continuity."""
    report = SuiteReport("regimes")
    for lam, mu in geometries:
        geom = ScaledGeometry(lam, mu)
        key = f"lam={lam},mu={mu}"
        cv = critical_values(geom)
        grid = [10 ** (-2 + 4 * j / 80) for j in range(81)]
        rows = scenario_scan(geom, grid)
        regimes = []
        for row in rows:
            if not regimes or regimes[-1] != row.regime:
                regimes.append(row.regime)
        expected_regimes = ["III", "II", "I"] if geom.is_symmetric else ["II", "I"]
        problems = []
        if regimes != expected_regimes:
            problems.append(f"regime sequence {regimes} != {expected_regimes}")

        if geom.is_symmetric:
            boundaries = [("x_c", cv.x_c), ("x_c_tilde", cv.x_c_tilde)]
        elif cv.sbs_region:
            boundaries = [("x_c", cv.x_c), ("x1", cv.x1)]
        else:
            boundaries = [("x_c", cv.x_c), ("x2", cv.x2)]
        res = {}
        for name, xb in boundaries:
            eps = 1e-9 * xb
            s_lo = eq.band_endpoints(geom, xb - eps)
            s_hi = eq.band_endpoints(geom, xb + eps)
            jump_a = abs(s_lo.a - s_hi.a)
            jump_b = abs(s_lo.b - s_hi.b)
            jump_e = abs(float(eq.first_moment(s_lo)) - float(eq.first_moment(s_hi)))
            res[f"{name}_jump_ab"] = max(jump_a, jump_b)
            res[f"{name}_jump_E"] = jump_e
            if max(jump_a, jump_b) > 1e-8 or jump_e > 1e-8:
                problems.append(f"discontinuity at {name}")
            ratios = []
            for e_rel in (1e-4, 1e-5, 1e-6):
                dx = e_rel * xb
                dphi = abs(
                    float(loggas_free_energy(geom, xb + dx))
                    - float(loggas_free_energy(geom, xb - dx))
                )
                ratios.append(dphi / dx)
            res[f"{name}_phi_slope"] = max(ratios)
            if max(ratios) > 10 * (1 + abs(min(ratios))):
                problems.append(f"free energy kink at {name}")
        report.add(key, not problems, res, "; ".join(problems))
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "equivalence": suite_equivalence,
    "structure": suite_structure,
    "macmahon": suite_macmahon,
    "equilibrium": suite_equilibrium,
    "moments": suite_moments,
    "special-values": suite_special_values,
    "transitions": suite_transitions,
    "convergence": suite_convergence,
    "parametric": suite_parametric,
    "regimes": suite_regimes,
}


def run_suites(names: Sequence[str] | None = None, **kwargs) -> list[SuiteReport]:
    """Run the named suites (all by default) with optional overrides.

    Keyword overrides are forwarded to suites that accept them
    (currently ``max_n`` and ``budget`` for the exact sweeps).
    """
    chosen = list(SUITES) if names is None else list(names)
    unknown = [n for n in chosen if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suites {unknown}; known: {sorted(SUITES)}")
    reports = []
    for name in chosen:
        fn = SUITES[name]
        accepted = {
            k: v for k, v in kwargs.items()
            if k in fn.__code__.co_varnames[: fn.__code__.co_argcount]
        }
        reports.append(fn(**accepted))
    return reports
