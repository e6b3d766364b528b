"""Exact finite-size quantities of the five-vertex model with
scalar-product boundary conditions.

Everything here is computed in exact rational arithmetic
(`fractions.Fraction`): the combinatorial prefactors, the terminating
hypergeometric polynomial, and the two independent representations of the
normalized partition-function factor (a Hankel determinant and a discrete
log-gas multiple sum).  Floating point enters only in
:func:`partition_function`, where the explicit Boltzmann-weight prefactor
is attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceededError, DomainError, InternalConsistencyError

#: default cap on elementary products in the log-gas multiple sum
DEFAULT_WORK_BUDGET = 100_000_000


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the out-of-range convention C(n,k)=0."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def plane_partition_count(a: int, b: int, c: int) -> int:
    """Number of boxed plane partitions in an a x b x c box.

    MacMahon's product formula.  The product is accumulated as an exact
    rational and must come out integral; a non-integral result indicates
    an arithmetic bug rather than bad input.
    """
    if min(a, b, c) < 0:
        raise DomainError("box sides must be nonnegative")
    total = Fraction(1)
    for j in range(1, a + 1):
        total *= Fraction(
            math.factorial(b + c + j - 1) * math.factorial(j - 1),
            math.factorial(b + j - 1) * math.factorial(c + j - 1),
        )
    if total.denominator != 1:
        raise InternalConsistencyError(
            f"MacMahon product is non-integral for box {(a, b, c)}: {total}"
        )
    return int(total)


@dataclass(frozen=True)
class FiniteModel:
    """An N-path instance on the L x M lattice.

    ``L`` counts vertical lines, ``M`` horizontal lines, ``N`` the paths
    entering from the top.  The configuration set is nonempty only for
    N <= min(M, L-1); the constructor rejects anything else.
    """

    N: int
    M: int
    L: int

    def __post_init__(self):
        for name in ("N", "M", "L"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        if self.N > self.M:
            raise DomainError(f"N exceeds M ({self.N} > {self.M}): no admissible configuration")
        if self.N > self.L - 1:
            raise DomainError(f"N exceeds L-1 ({self.N} > {self.L - 1}): no admissible configuration")

    @property
    def max_site(self) -> int:
        """Largest occupied-site index in the log-gas picture, min(L-2, M-1)."""
        return min(self.L - 2, self.M - 1)

    @property
    def degree(self) -> int:
        """Degree of the normalized polynomial factor, N*min(M-N, L-N-1)."""
        return self.N * min(self.M - self.N, self.L - self.N - 1)


@dataclass(frozen=True)
class WeightParams:
    """Boltzmann-weight parameters (x, Delta, alpha).

    The parametrization ties the sign of Delta to the side of x = 1:
    x in (0,1) requires Delta < 0 and x in (1,inf) requires Delta > 0.
    x = 1 itself is the free-fermion limit Delta -> 0 and is rejected.
    """

    x: float
    delta: float
    alpha: float

    def __post_init__(self):
        if not self.x > 0:
            raise DomainError(f"x must be positive, got {self.x}")
        if self.delta == 0 or self.x == 1:
            raise DomainError("x = 1 / Delta = 0 is the free-fermion limit; not representable")
        if (self.x < 1) != (self.delta < 0):
            raise DomainError(
                f"sign inconsistency: x={self.x} requires Delta {'<' if self.x < 1 else '>'} 0"
            )
        if self.alpha < 0:
            raise DomainError(f"alpha must be nonnegative, got {self.alpha}")


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with exact rational coefficients, ascending powers.

    Used for polynomials in the inverse weight y = 1/x.  Immutable;
    trailing zero coefficients are stripped on construction.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            coeffs = (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def constant_term(self) -> Fraction:
        return self.coefficients[0]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1]

    def __bool__(self) -> bool:
        return any(self.coefficients)

    def __call__(self, y) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * y + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPolynomial(tuple(out))

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + RationalPolynomial(tuple(-c for c in other.coefficients))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(tuple(c * other for c in self.coefficients))
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, ci in enumerate(self.coefficients):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coefficients):
                out[i + j] += ci * cj
        return RationalPolynomial(tuple(out))

    __rmul__ = __mul__

    def exact_div(self, other: "RationalPolynomial") -> "RationalPolynomial":
        """Polynomial division that must leave no remainder."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return RationalPolynomial((Fraction(0),))
        rem = list(self.coefficients)
        div = other.coefficients
        dq = len(rem) - len(div)
        if dq < 0:
            raise InternalConsistencyError("non-exact polynomial division (degree)")
        quot = [Fraction(0)] * (dq + 1)
        lead = div[-1]
        for k in range(dq, -1, -1):
            q = rem[k + len(div) - 1] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(div):
                    rem[k + j] -= q * c
        if any(rem):
            raise InternalConsistencyError("non-exact polynomial division (remainder)")
        return RationalPolynomial(tuple(quot))

    def shift_down(self, k: int) -> "RationalPolynomial":
        """Divide by y**k; the low-order coefficients must vanish."""
        if any(self.coefficients[:k]):
            raise InternalConsistencyError(
                f"polynomial not divisible by y^{k}: low coefficients {self.coefficients[:k]}"
            )
        return RationalPolynomial(self.coefficients[k:] or (Fraction(0),))


def _exact_div(a, b):
    if isinstance(a, RationalPolynomial):
        return a.exact_div(b)
    return a / b


def bareiss_determinant(rows):
    """Exact determinant by fraction-free (Bareiss) elimination.

    Entries may be Fractions or :class:`RationalPolynomial`; every
    division performed is exact by construction, which keeps intermediate
    expression growth polynomially bounded (each intermediate entry is a
    minor of the original matrix).
    """
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in a):
        raise DomainError("matrix must be square")
    if n == 1:
        return a[0][0]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                zero = a[k][k] * 0 if isinstance(a[k][k], RationalPolynomial) else Fraction(0)
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else _exact_div(num, prev)
            a[i][k] = a[i][k] * 0
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else det * -1


def site_weight(model: FiniteModel, k: int, x) -> Fraction:
    """Discrete log-gas site weight C(L-2,k) C(M-1,k) x^-k / (k+1)."""
    if not 0 <= k <= model.max_site:
        raise DomainError(f"site index {k} outside [0, {model.max_site}]")
    x = Fraction(x)
    if x <= 0:
        raise DomainError("x must be positive")
    return Fraction(
        binomial(model.L - 2, k) * binomial(model.M - 1, k), k + 1
    ) * x ** (-k)


def normalization_constant(model: FiniteModel) -> Fraction:
    """Prefactor shared by both representations of the determinant factor."""
    num = 1
    den = 1
    for j in range(model.N):
        num *= math.factorial(model.L - model.N + j - 1) * math.factorial(model.M - model.N + j)
        den *= math.factorial(model.L - 2) * math.factorial(model.M - 1)
    return Fraction(num, den)


def _loggas_work_estimate(model: FiniteModel) -> int:
    tuples = math.comb(model.max_site + 1, model.N)
    per_tuple = model.N * (model.N - 1) // 2 + model.N
    return tuples * max(per_tuple, 1)


def tau_loggas(model: FiniteModel, x, budget: int = DEFAULT_WORK_BUDGET) -> Fraction:
    """Determinant factor as an explicit discrete log-gas multiple sum.

    The symmetric sum over (m+1)^N sites is reduced to strictly ordered
    tuples times N! (the squared Vandermonde kills coincident sites).
    Exponential in N; guarded by a work budget.
    """
    est = _loggas_work_estimate(model)
    if est > budget:
        raise BudgetExceededError(est, budget)
    x = Fraction(x)
    weights = [site_weight(model, k, x) for k in range(model.max_site + 1)]
    total = Fraction(0)
    n = model.N
    for combo in combinations(range(model.max_site + 1), n):
        vandermonde = 1
        for i in range(n):
            for j in range(i + 1, n):
                vandermonde *= (combo[j] - combo[i]) ** 2
        term = Fraction(vandermonde)
        for k in combo:
            term *= weights[k]
        total += term
    return math.factorial(n) * normalization_constant(model) * total


def hyper2f1_polynomial(model: FiniteModel) -> RationalPolynomial:
    """Terminating 2F1(-L+2, -M+1; 2; y) as a polynomial in y = 1/x.

    Coefficient of y^k is the ratio of Pochhammer products
    (-L+2)_k (-M+1)_k / [(2)_k k!]; the series terminates at
    k = min(L-2, M-1).
    """
    if model.L < 2 or model.M < 1:
        raise DomainError("need L >= 2 and M >= 1")
    coeffs = [Fraction(1)]
    for k in range(1, model.max_site + 1):
        ratio = Fraction(
            (-model.L + 2 + k - 1) * (-model.M + 1 + k - 1), (k + 1) * k
        )
        coeffs.append(coeffs[-1] * ratio)
    return RationalPolynomial(tuple(coeffs))


def _hankel_entry_coeffs(model: FiniteModel) -> list[list[Fraction]]:
    """Per-power coefficients (-k)^p c_k of the differentiated series.

    Row index p runs over 0 .. 2N-2; applying (x d/dx) termwise to
    sum c_k x^-k multiplies the k-th coefficient by -k.
    """
    base = hyper2f1_polynomial(model).coefficients
    rows = []
    for p in range(2 * model.N - 1):
        rows.append([Fraction((-k) ** p) * c for k, c in enumerate(base)])
    return rows


def tau_hankel(model: FiniteModel, x) -> Fraction:
    """Determinant factor via the Hankel representation, exactly.

    Matrix entry (i, j) is the (i+j-2)-fold (x d/dx) derivative of the
    terminating hypergeometric series, evaluated at the given rational x;
    the determinant is computed by fraction-free elimination.
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError("x must be positive")
    y = 1 / x
    per_power = _hankel_entry_coeffs(model)
    ypow = [y**k for k in range(model.max_site + 1)]
    evaluated = [
        sum((c * yk for c, yk in zip(row, ypow)), Fraction(0)) for row in per_power
    ]
    n = model.N
    matrix = [[evaluated[i + j] for j in range(n)] for i in range(n)]
    det = bareiss_determinant(matrix)
    return math.factorial(n) * normalization_constant(model) * det


def partition_polynomial(model: FiniteModel) -> RationalPolynomial:
    """Normalized polynomial factor of the partition function, in y = 1/x.

    Built symbolically: the Hankel determinant is evaluated over the
    polynomial ring in y, then shifted down by y^(N(N-1)/2).  The result
    has constant term exactly 1 and degree N*min(M-N, L-N-1); both are
    verified before returning.
    """
    n = model.N
    per_power = _hankel_entry_coeffs(model)
    entry_polys = [RationalPolynomial(tuple(row)) for row in per_power]
    matrix = [[entry_polys[i + j] for j in range(n)] for i in range(n)]
    det = bareiss_determinant(matrix)
    if isinstance(det, Fraction):
        det = RationalPolynomial((det,))
    tau_poly = det * (math.factorial(n) * normalization_constant(model))
    poly = tau_poly.shift_down(n * (n - 1) // 2)
    if poly.constant_term != 1:
        raise InternalConsistencyError(
            f"constant term {poly.constant_term} != 1 for {model}"
        )
    if poly.degree != model.degree:
        raise InternalConsistencyError(
            f"degree {poly.degree} != {model.degree} for {model}"
        )
    return poly


def partition_function(model: FiniteModel, w: WeightParams) -> float:
    """Full partition function: C(M,N) * prefactor * polynomial factor.

    The polynomial factor is evaluated exactly at 1/x and converted at
    the end; the extremal-configuration weight prefactor is assembled in
    floating point.
    """
    N, M, L = model.N, model.M, model.L
    e_alpha = M * (L - 2 * N)
    if w.alpha == 0 and e_alpha < 0:
        raise DomainError("alpha = 0 with negative exponent M(L-2N)")
    prefactor = ((w.x - 1) / w.delta) ** ((L - N) * (M - N))
    prefactor *= (w.alpha / math.sqrt(w.x)) ** e_alpha
    prefactor *= w.x ** (N * (L - N - 1))
    poly = partition_polynomial(model)
    pval = poly(1 / Fraction(w.x))
    return binomial(M, N) * prefactor * float(pval)
