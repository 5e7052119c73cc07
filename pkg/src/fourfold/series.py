"""Exact truncated formal power series and the generating-series constructors.

Everything here is a polynomial in t truncated at an explicit order N, with
fractions.Fraction coefficients.  No floats: the downstream rank formulas rely
on exact cancellation to integers, so this module never rounds.

Binary operations truncate to the minimum of the two orders.  Operations never
extend a truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import (
    DomainError,
    InternalInconsistency,
    LogDomain,
    NonInvertibleSeries,
    UngradedGenerator,
)

RationalLike = Union[int, Fraction]


@dataclass(frozen=True)
class TruncatedSeries:
    """A power series known exactly up to (and including) t^truncation_order.

    >>> s = TruncatedSeries.from_coefficients([1, 2, 3], 2)
    >>> s.coefficient(1)
    Fraction(2, 1)
    >>> s + s == TruncatedSeries.from_coefficients([2, 4, 6], 2)
    True
    """

    coeffs: tuple
    truncation_order: int

    def __post_init__(self):
        if self.truncation_order < 0:
            raise DomainError("truncation order must be >= 0")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.truncation_order + 1:
            raise DomainError(
                f"need {self.truncation_order + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[RationalLike], order: int) -> "TruncatedSeries":
        """Series from the low-degree coefficients; missing ones are zero."""
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > order + 1:
            raise DomainError("more coefficients than the truncation order allows")
        cs += [Fraction(0)] * (order + 1 - len(cs))
        return cls(tuple(cs), order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls.from_coefficients([1], order)

    @classmethod
    def monomial(cls, degree: int, order: int, coeff: RationalLike = 1) -> "TruncatedSeries":
        """coeff * t^degree, truncated at order (zero if degree > order)."""
        cs = [Fraction(0)] * (order + 1)
        if 0 <= degree <= order:
            cs[degree] = Fraction(coeff)
        return cls(tuple(cs), order)

    # -- accessors ---------------------------------------------------------

    def coefficient(self, i: int) -> Fraction:
        if not 0 <= i <= self.truncation_order:
            raise DomainError(f"coefficient index {i} outside 0..{self.truncation_order}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TruncatedSeries":
        """Drop coefficients above the given (smaller or equal) order."""
        if order > self.truncation_order:
            raise DomainError("cannot extend a truncation order")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_int_list(self) -> list:
        """Coefficients as plain ints; error if any denominator is not 1."""
        if not self.is_integral():
            raise InternalInconsistency(f"series is not integral: {self.coeffs}")
        return [c.numerator for c in self.coeffs]

    # -- operator sugar (delegates to the module-level functions) ----------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, series_scale(other, -1))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(t^{self.truncation_order + 1})"

    # -- serialization -----------------------------------------------------

    def to_json_dict(self) -> dict:
        """{"truncation_order": N, "coefficients": [...]} with string coefficients.

        Integral coefficients render as plain decimal strings, others as "p/q".
        """
        return {
            "truncation_order": self.truncation_order,
            "coefficients": [_rational_str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json_dict(cls, doc: Mapping) -> "TruncatedSeries":
        order = int(doc["truncation_order"])
        coeffs = [Fraction(s) for s in doc["coefficients"]]
        return cls(tuple(coeffs), order)


def _rational_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class GradedDims:
    """Degreewise dimensions of a graded vector space, indexed 0..N."""

    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise DomainError(f"negative dimension in {dims}")
        object.__setattr__(self, "dims", dims)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], max_degree: int) -> "GradedDims":
        """GradedDims({1: 2, 2: 2}, 4) -> dims (0, 2, 2, 0, 0)."""
        dims = [0] * (max_degree + 1)
        for deg, mult in mapping.items():
            if deg < 0:
                raise DomainError(f"negative degree {deg}")
            if 0 <= deg <= max_degree:
                dims[deg] = int(mult)
        return cls(tuple(dims))

    def degree_dim(self, i: int) -> int:
        if 0 <= i < len(self.dims):
            return self.dims[i]
        return 0

    def max_degree(self) -> int:
        return len(self.dims) - 1

    def __getitem__(self, i: int) -> int:
        return self.degree_dim(i)


DimsLike = Union[GradedDims, Mapping[int, int], Sequence[int]]


def _dims_by_degree(dims: DimsLike) -> dict:
    """Normalize any accepted multiplicity container to {degree: multiplicity}."""
    if isinstance(dims, GradedDims):
        return {i: d for i, d in enumerate(dims.dims) if d}
    if isinstance(dims, Mapping):
        return {int(i): int(d) for i, d in dims.items() if d}
    return {i: int(d) for i, d in enumerate(dims) if d}


# -- arithmetic -------------------------------------------------------------


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficientwise sum, truncated at the smaller order."""
    n = min(a.truncation_order, b.truncation_order)
    return TruncatedSeries(
        tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)), n
    )


def series_scale(a: TruncatedSeries, c: RationalLike) -> TruncatedSeries:
    c = Fraction(c)
    return TruncatedSeries(tuple(x * c for x in a.coeffs), a.truncation_order)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller order."""
    n = min(a.truncation_order, b.truncation_order)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coeffs[j]
            if bj != 0:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out), n)


def series_pow(a: TruncatedSeries, e: int) -> TruncatedSeries:
    """a**e for integer e >= 0, by binary exponentiation."""
    if e < 0:
        raise DomainError("negative exponent; use series_reciprocal explicitly")
    result = TruncatedSeries.one(a.truncation_order)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        e >>= 1
    return result


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    """The series r with a*r = 1 up to the truncation order.

    >>> one_minus_t = TruncatedSeries.from_coefficients([1, -1], 4)
    >>> series_reciprocal(one_minus_t).coeffs == (1, 1, 1, 1, 1)
    True
    """
    n = a.truncation_order
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NonInvertibleSeries("constant term is zero")
    inv0 = 1 / a0
    out = [Fraction(0)] * (n + 1)
    out[0] = inv0
    # r_m = -(1/a_0) * sum_{i=1..m} a_i r_{m-i}
    for m in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, m + 1):
            if a.coeffs[i] != 0:
                acc += a.coeffs[i] * out[m - i]
        out[m] = -inv0 * acc
    return TruncatedSeries(tuple(out), n)


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    """log(a) = -sum_{m>=1} (1-a)^m / m, for series with constant term 1."""
    n = a.truncation_order
    if a.coeffs[0] != 1:
        raise LogDomain(f"constant term must be 1, got {a.coeffs[0]}")
    # u = 1 - a has valuation >= 1, so u^m contributes nothing past m = n
    u = TruncatedSeries(
        tuple(-c if i else Fraction(0) for i, c in enumerate(a.coeffs)), n
    )
    out = TruncatedSeries.zero(n)
    power = TruncatedSeries.one(n)
    for m in range(1, n + 1):
        power = series_mul(power, u)
        out = series_add(out, series_scale(power, Fraction(-1, m)))
    return out


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) = sum_{m>=0} a^m / m!, for series with constant term 0.

    Inverse of series_log; the roundtrip property test lives on this pair.
    """
    n = a.truncation_order
    if a.coeffs[0] != 0:
        raise DomainError(f"constant term must be 0, got {a.coeffs[0]}")
    out = TruncatedSeries.one(n)
    power = TruncatedSeries.one(n)
    fact = 1
    for m in range(1, n + 1):
        power = series_mul(power, a)
        fact *= m
        out = series_add(out, series_scale(power, Fraction(1, fact)))
    return out


# -- generating-series constructors ----------------------------------------


def free_comm_series(dims: DimsLike, N: int) -> TruncatedSeries:
    """Hilbert series of the free graded-commutative algebra on given generators.

    Odd-degree generators contribute exterior factors (1 + t^i), even-degree
    ones polynomial factors 1/(1 - t^i):

        prod_{i odd} (1 + t^i)^dims[i] / prod_{i even} (1 - t^i)^dims[i]

    Degree-0 generators are rejected: the construction needs V_0 = 0.

    >>> free_comm_series({2: 1}, 6).as_int_list()
    [1, 0, 1, 0, 1, 0, 1]
    >>> free_comm_series({1: 1}, 3).as_int_list()
    [1, 1, 0, 0]
    """
    by_deg = _dims_by_degree(dims)
    if by_deg.get(0, 0) != 0:
        raise UngradedGenerator("degree-0 generators are not allowed")
    num = TruncatedSeries.one(N)
    den = TruncatedSeries.one(N)
    for deg in sorted(by_deg):
        mult = by_deg[deg]
        if deg > N or mult == 0:
            continue
        if deg % 2 == 1:
            factor = series_add(
                TruncatedSeries.one(N), TruncatedSeries.monomial(deg, N)
            )
            num = series_mul(num, series_pow(factor, mult))
        else:
            factor = series_add(
                TruncatedSeries.one(N), TruncatedSeries.monomial(deg, N, -1)
            )
            den = series_mul(den, series_pow(factor, mult))
    return series_mul(num, series_reciprocal(den))


def tensor_series(dims: DimsLike, N: int) -> TruncatedSeries:
    """Hilbert series 1/(1 - sum_i dims[i] t^i) of the free associative algebra.

    The n-th coefficient counts words over the graded alphabet with total
    degree n (one letter of each listed multiplicity per degree).

    >>> tensor_series({1: 2, 2: 2}, 3).as_int_list()
    [1, 2, 6, 16]
    """
    by_deg = _dims_by_degree(dims)
    if by_deg.get(0, 0) != 0:
        raise UngradedGenerator("degree-0 generators are not allowed")
    den = TruncatedSeries.one(N)
    for deg, mult in by_deg.items():
        if 1 <= deg <= N and mult:
            den = series_add(den, TruncatedSeries.monomial(deg, N, -mult))
    return series_reciprocal(den)


def quotient_series(k: int, N: int) -> TruncatedSeries:
    """Dimension series 1/(1 - k t - k t^2 + t^3) of the loop-homology algebra.

    k is the number of 2-sphere x 3-sphere summands in the connected sum
    (one x-generator of degree 1 and one y-generator of degree 2 per summand,
    modulo the single cubic relation sum_i [x_i, y_i]).  Computed by the
    linear recurrence

        a_0 = 1,  a_1 = k,  a_2 = k^2 + k,
        a_n = k a_{n-1} + k a_{n-2} - a_{n-3}   (n >= 3)

    and cross-checked against the reciprocal of the cubic.

    >>> quotient_series(2, 5).as_int_list()
    [1, 2, 6, 15, 40, 104]
    """
    if k < 1:
        raise DomainError(
            "k must be >= 1: the quotient model needs at least one summand, "
            "and at k = 0 the series 1/(1 + t^3) has negative coefficients"
        )
    a = [0] * (N + 1)
    for n in range(N + 1):
        if n == 0:
            a[n] = 1
        elif n == 1:
            a[n] = k
        elif n == 2:
            a[n] = k * k + k
        else:
            a[n] = k * a[n - 1] + k * a[n - 2] - a[n - 3]
    by_recurrence = TruncatedSeries.from_coefficients(a, N)
    cubic = TruncatedSeries.from_coefficients([1, -k, -k, 1], N)
    if series_reciprocal(cubic) != by_recurrence:
        raise InternalInconsistency(
            f"recurrence and reciprocal disagree for k={k}, N={N}"
        )
    return by_recurrence


def pbw_series(ranks, N: int) -> TruncatedSeries:
    """Product series of a graded Lie algebra's universal envelope.

    Takes rank multiplicities by degree (a RankTable or a {degree: rank}
    mapping; degrees not listed count as 0) and forms the free
    graded-commutative series on them: odd degrees give exterior factors,
    even degrees polynomial factors.

    >>> pbw_series({1: 1, 4: 1}, 5).as_int_list()
    [1, 1, 0, 0, 1, 1]
    """
    if isinstance(ranks, (GradedDims, Mapping)):
        by_deg = _dims_by_degree(ranks)
    else:
        # RankTable-like: .ranks is m_1..m_N with m_n at index n-1
        by_deg = {i + 1: m for i, m in enumerate(ranks.ranks) if m}
    return free_comm_series(by_deg, N)
