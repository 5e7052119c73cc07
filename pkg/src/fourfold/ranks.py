"""Rational homotopy ranks of simply connected closed 4-manifolds.

The whole computation is driven by one integer: the second Betti number b2 = k.
For k >= 2 the rank of pi_{n+1} tensor Q is

    m_n(k) = -sum_{d|n} (-1)^(n + n/d) mu(d) lambda_{n/d} / d

where lambda_n is the t^n coefficient of log(1 - k t + t^2).  The sum must
cancel to a nonnegative integer; anything else is a bug and raises.

Public parameter convention: every function here takes b2 itself.  The
closed-form polynomials for low degrees are internally evaluated at b2 - 1;
that reindexing lives in one place (_closed_form) with its own tests, because
it is the easiest place to slip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .errors import DomainError, InternalInconsistency
from .series import TruncatedSeries, pbw_series, quotient_series, series_reciprocal

#: Working precision (decimal digits) for the growth base beta.  The residual
#: check probes n = 60 against a 1e-6 tolerance; 50+ digits leaves headroom.
GROWTH_PRECISION = 60


def moebius(d: int) -> int:
    """Moebius function: 0 on non-squarefree d, else (-1)^(number of primes).

    >>> [moebius(d) for d in range(1, 13)]
    [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    """
    if d < 1:
        raise DomainError(f"moebius undefined for {d}")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def _divisors(n: int) -> list:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def lambda_coeff(k: int, n: int) -> Fraction:
    """t^n coefficient of log(1 - k t + t^2):

        lambda_n = -sum_{a + 2b = n} (-1)^b C(a+b, b) k^a / (a+b)

    >>> lambda_coeff(3, 2)
    Fraction(-7, 2)
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    acc = Fraction(0)
    for b in range(n // 2 + 1):
        a = n - 2 * b
        acc += Fraction((-1) ** b * math.comb(a + b, b) * k**a, a + b)
    return -acc


@dataclass(frozen=True)
class RankTable:
    """Ranks m_1..m_N where m_n = rank of pi_{n+1} tensor Q at b2 = betti."""

    betti: int
    max_degree: int
    ranks: tuple

    def rank(self, n: int) -> int:
        """m_n for 1 <= n <= max_degree."""
        if not 1 <= n <= self.max_degree:
            raise DomainError(f"degree {n} outside 1..{self.max_degree}")
        return self.ranks[n - 1]

    def to_json_dict(self) -> dict:
        return {
            "betti": self.betti,
            "ranks": {f"pi_{n + 1}": m for n, m in enumerate(self.ranks, start=1)},
        }

    def to_csv(self) -> str:
        lines = ["degree,rank"]
        for n, m in enumerate(self.ranks, start=1):
            lines.append(f"{n + 1},{m}")
        return "\n".join(lines) + "\n"


# The b2 = 1 manifolds are rationally elliptic with one generator in
# degree 2 and one in degree 5 (in m-table indexing: degrees 1 and 4).
# The k >= 2 derivation needs at least one summand in the associated
# connected sum, so this case is returned as a fixed table instead.
_ELLIPTIC_B2_1 = (1, 0, 0, 1)


def homotopy_ranks(betti: int, N: int) -> RankTable:
    """Rank table m_1..m_N for second Betti number betti.

    >>> homotopy_ranks(3, 6).ranks
    (3, 5, 5, 10, 24, 55)
    >>> homotopy_ranks(2, 6).ranks
    (2, 2, 0, 0, 0, 0)
    """
    if betti < 1:
        raise DomainError(f"second Betti number must be >= 1, got {betti}")
    if N < 1:
        raise DomainError(f"max degree must be >= 1, got {N}")
    k = betti
    if k == 1:
        ranks = tuple(_ELLIPTIC_B2_1[n - 1] if n <= 4 else 0 for n in range(1, N + 1))
        return RankTable(betti=1, max_degree=N, ranks=ranks)

    lam = {n: lambda_coeff(k, n) for n in range(1, N + 1)}
    ranks = []
    for n in range(1, N + 1):
        acc = Fraction(0)
        for d in _divisors(n):
            acc += (-1) ** (n + n // d) * moebius(d) * lam[n // d] / d
        m_n = -acc
        if m_n.denominator != 1 or m_n < 0:
            raise InternalInconsistency(
                f"m_{n}({k}) = {m_n} is not a nonnegative integer; "
                "sign convention violated"
            )
        ranks.append(m_n.numerator)
    # anchors forced independently of the inversion: m_1 by Hurewicz,
    # m_2 by the degree-3 closed form
    if ranks[0] != k:
        raise InternalInconsistency(f"m_1({k}) = {ranks[0]}, expected {k}")
    if N >= 2 and ranks[1] != (k - 1) * (k + 2) // 2:
        raise InternalInconsistency(
            f"m_2({k}) = {ranks[1]}, expected {(k - 1) * (k + 2) // 2}"
        )
    return RankTable(betti=betti, max_degree=N, ranks=tuple(ranks))


def _closed_form(j: int, c: int) -> int:
    """Low-degree closed forms at internal parameter c (= b2 - 1).

    Index j matches the m-table: m_j is the rank of pi_{j+1}.
    """
    if j == 2:
        num = c * (c + 3)
        den = 2
    elif j == 3:
        num = (c - 1) * (c + 1) * (c + 3)
        den = 3
    elif j == 4:
        num = c * (c - 1) * (c + 2) * (c + 3)
        den = 4
    elif j == 5:
        num = c * (c - 1) * (c + 1) * (c + 2) * (c + 3)
        den = 5
    elif j == 6:
        num = c * (c - 1) * (c + 1) * (c + 3) * (c * c + 3 * c + 1)
        den = 6
    else:
        raise DomainError(f"no closed form for degree {j}; supported range is 2..6")
    if num % den:
        raise InternalInconsistency(f"closed form at j={j}, c={c} is not integral")
    return num // den


def rank_polynomial_eval(degree: int, betti: int) -> int:
    """Closed-form rank m_degree for b2 = betti, degrees 2..6 only.

    Must agree with homotopy_ranks(betti, N).rank(degree); the acceptance
    suite asserts this.

    >>> rank_polynomial_eval(6, 3)
    55
    """
    if not 2 <= degree <= 6:
        raise DomainError(f"degree {degree} outside the closed-form range 2..6")
    if betti < 3:
        raise DomainError(f"closed forms need b2 >= 3, got {betti}")
    return _closed_form(degree, betti - 1)


PBW_PASS = "pass"
PBW_FAIL = "fail"
PBW_NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class PbwCheck:
    """Outcome of the two product-series identities."""

    status: str  # pass | fail | not-applicable
    first_failure: Optional[int] = None

    def __bool__(self):
        return self.status != PBW_FAIL


def pbw_identity_check(betti: int, N: int) -> PbwCheck:
    """Check both product-series identities for the computed rank table.

    Identity 1: the product series of the ranks at b2 = k equals
    1/(1 - k t + t^2) up to order N.

    Identity 2: replacing m_1 by k - 1 (the l-table of the associated
    connected sum of k - 1 summands) gives the quotient algebra series
    at parameter k - 1.

    Not applicable at b2 = 1: identity 1's right side 1/(1 - t + t^2) has
    negative coefficients there, and identity 2's parameter would be 0.
    """
    if betti < 1:
        raise DomainError(f"second Betti number must be >= 1, got {betti}")
    if betti == 1:
        return PbwCheck(status=PBW_NOT_APPLICABLE)
    k = betti
    table = homotopy_ranks(k, N)

    lhs1 = pbw_series(table, N)
    rhs1 = series_reciprocal(TruncatedSeries.from_coefficients([1, -k, 1], N))
    for n in range(N + 1):
        if lhs1.coefficient(n) != rhs1.coefficient(n):
            return PbwCheck(status=PBW_FAIL, first_failure=n)

    l_dims = {1: k - 1}
    l_dims.update({n: table.rank(n) for n in range(2, N + 1) if table.rank(n)})
    lhs2 = pbw_series(l_dims, N)
    rhs2 = quotient_series(k - 1, N)
    for n in range(N + 1):
        if lhs2.coefficient(n) != rhs2.coefficient(n):
            return PbwCheck(status=PBW_FAIL, first_failure=n)

    return PbwCheck(status=PBW_PASS)


@dataclass(frozen=True)
class GrowthReport:
    """Growth classification of the rank sequence at a given Betti number.

    growth_base and limit_residual are Decimals carrying `precision` digits;
    they are absent (None) in the elliptic case b2 <= 2.
    """

    betti: int
    classification: str  # "elliptic" | "hyperbolic"
    probe_degree: int
    growth_base: Optional[Decimal]
    limit_residual: Optional[Decimal]
    exponential_growth: bool
    precision: int
    cumulative_bound_ok: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        doc = {
            "betti": self.betti,
            "classification": self.classification,
            "probe_degree": self.probe_degree,
            "growth_base": None if self.growth_base is None else str(self.growth_base),
            "limit_residual": (
                None if self.limit_residual is None else str(self.limit_residual)
            ),
            "exponential_growth": self.exponential_growth,
            "precision": self.precision,
            "cumulative_bound_ok": {
                str(n): ok for n, ok in sorted(self.cumulative_bound_ok.items())
            },
        }
        return doc


def growth_base(betti: int, precision: int = GROWTH_PRECISION) -> Decimal:
    """beta = (k + sqrt(k^2 - 4))/2 at the given decimal precision, k >= 3."""
    if betti < 3:
        raise DomainError(f"growth base exists only for b2 >= 3, got {betti}")
    with localcontext() as ctx:
        ctx.prec = precision
        k = Decimal(betti)
        return +((k + (k * k - 4).sqrt()) / 2)


def _fit_exponential(ranks: tuple) -> tuple:
    """Least-squares fit of the running max M_n against C^n; returns (C, lam).

    The flag's definition: the sequence grows exponentially when there are
    C > 1 and lam > 0 with max_{i<=n} m_i >= lam * C^n for all n.  We fit C
    on the upper half of the probe window and take lam as the worst observed
    ratio; the caller flags growth when C > 1 and lam > 0.
    """
    running = []
    best = 0
    for m in ranks:
        best = max(best, m)
        running.append(best)
    N = len(running)
    lo = max(3, N // 2)
    pts = [(n, math.log(running[n - 1])) for n in range(lo, N + 1) if running[n - 1] > 0]
    if len(pts) < 2:
        return 1.0, 0.0
    xbar = sum(p[0] for p in pts) / len(pts)
    ybar = sum(p[1] for p in pts) / len(pts)
    sxx = sum((p[0] - xbar) ** 2 for p in pts)
    sxy = sum((p[0] - xbar) * (p[1] - ybar) for p in pts)
    slope = sxy / sxx if sxx else 0.0
    C = math.exp(slope)
    if C <= 1.0:
        return C, 0.0
    lam = min(running[n - 1] / C**n for n in range(1, N + 1))
    return C, lam


def growth_report(betti: int, N: int = 60) -> GrowthReport:
    """Classify the rank sequence and probe its growth out to degree N.

    >>> growth_report(2, 10).classification
    'elliptic'
    """
    if betti < 1:
        raise DomainError(f"second Betti number must be >= 1, got {betti}")
    if N < 1:
        raise DomainError(f"probe degree must be >= 1, got {N}")
    table = homotopy_ranks(betti, N)
    C, lam = _fit_exponential(table.ranks)
    exponential = C > 1.0 and lam > 0.0

    if betti <= 2:
        return GrowthReport(
            betti=betti,
            classification="elliptic",
            probe_degree=N,
            growth_base=None,
            limit_residual=None,
            exponential_growth=exponential,
            precision=GROWTH_PRECISION,
            cumulative_bound_ok={},
        )

    beta = growth_base(betti)
    with localcontext() as ctx:
        ctx.prec = GROWTH_PRECISION
        residual = abs(Decimal(N) * Decimal(table.rank(N)) / beta**N - 1)
        residual = +residual
    bounds = cumulative_bound_check(betti, max(1, N // 2), _table=table)
    return GrowthReport(
        betti=betti,
        classification="hyperbolic",
        probe_degree=N,
        growth_base=beta,
        limit_residual=residual,
        exponential_growth=exponential,
        precision=GROWTH_PRECISION,
        cumulative_bound_ok=bounds,
    )


def divisibility_report(betti: int, n_max: int = 12) -> list:
    """Empirically evaluate three claimed divisibility patterns. Informational.

    With c = b2 - 1 the claims say, in pi-indexing: (c-1) | rank pi_n for
    n > 3, c | rank pi_n for n > 4, and (c+1) | rank pi_n for n > 5.  As
    statements about polynomial factors in c they hold; as integer
    divisibilities they can fail (rank pi_7 = 55 at b2 = 3 is divisible by
    neither 2 nor 3), so callers must treat this report as non-gating.

    Returns one dict per claim with any counterexamples up to pi_{n_max + 1}.
    """
    if betti < 2:
        raise DomainError(f"divisibility report needs b2 >= 2, got {betti}")
    c = betti - 1
    table = homotopy_ranks(betti, n_max)
    claims = [(c - 1, 3), (c, 4), (c + 1, 5)]  # (divisor, first affected m-index)
    out = []
    for divisor, j_floor in claims:
        failures = []
        for j in range(j_floor, n_max + 1):  # m-index j = pi-index - 1
            m = table.rank(j)
            divides = (m == 0) if divisor == 0 else (m % divisor == 0)
            if not divides:
                failures.append({"pi_degree": j + 1, "rank": m})
        out.append(
            {
                "divisor": divisor,
                "applies_from_pi": j_floor + 1,
                "holds": not failures,
                "counterexamples": failures,
            }
        )
    return out


def cumulative_bound_check(betti: int, n_max: int, _table: Optional[RankTable] = None) -> dict:
    """Check sum_{i=1}^{2n} m_i(b2) >= (b2 - 1)^(2n) / (2n) for n = 1..n_max.

    The left side is the total rank of pi_2..pi_{2n+1}.  Comparison is exact
    (Fraction right side).  Returns {n: bool}.

    >>> cumulative_bound_check(3, 2)
    {1: True, 2: True}
    """
    if betti < 3:
        raise DomainError(f"cumulative bound needs b2 >= 3, got {betti}")
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    table = _table
    if table is None or table.max_degree < 2 * n_max:
        table = homotopy_ranks(betti, 2 * n_max)
    k = betti - 1
    out = {}
    partial = 0
    for i in range(1, 2 * n_max + 1):
        partial += table.rank(i)
        if i % 2 == 0:
            n = i // 2
            out[n] = Fraction(partial) >= Fraction(k ** (2 * n), 2 * n)
    return out
