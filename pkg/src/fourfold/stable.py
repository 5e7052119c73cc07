"""Finitely generated abelian groups and stable homotopy group assembly.

Groups are kept in primary decomposition: a free rank plus a multiset of
prime-power torsion orders, canonically sorted by (prime, exponent).  Direct
sums then just concatenate multisets; invariant factors are recomputed only
for display.

The assembly formula for a simply connected closed 4-manifold with second
Betti number k reads off three sphere stems:

    pi_n^s(M) = (pi_{n-2}^s)^k (+) (pi_{n-3}^s)^(k-1) (+) pi_{n-5}^s

and a finite fundamental group of order m adds (pi_{n-1}^s)^(m-1).  Stems
below index 0 are trivial.  The stem values themselves are standard reference
data loaded from a table, never computed here.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Mapping, Sequence, Tuple, Union

from .errors import (
    DomainError,
    InsufficientStemsData,
    InternalInconsistency,
    ParseError,
    ValidationError,
)


def _factor(n: int) -> dict:
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_power_key(q: int) -> tuple:
    """(p, e) for a prime power q = p^e > 1; DomainError otherwise."""
    if q < 2:
        raise DomainError(f"torsion order {q} is not a prime power > 1")
    f = _factor(q)
    if len(f) != 1:
        raise DomainError(f"torsion order {q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


@dataclass(frozen=True)
class FinAbGroup:
    """free_rank copies of Z plus cyclic groups of prime-power order.

    The torsion tuple is canonicalized on construction, so equality of
    fields is equality of groups.

    >>> FinAbGroup.from_orders(1, [24]) == FinAbGroup(1, (8, 3))
    True
    >>> str(FinAbGroup(1, (8, 8, 3, 3, 2)))
    '(Z/24)^2 + Z/2 + Z'
    """

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError(f"negative free rank {self.free_rank}")
        canon = tuple(sorted((int(q) for q in self.torsion), key=_prime_power_key))
        object.__setattr__(self, "torsion", canon)

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def from_orders(cls, free_rank: int, orders: Sequence[int] = ()) -> "FinAbGroup":
        """Build from cyclic orders, splitting each into prime-power parts.

        Order 0 counts as a Z summand, order 1 as nothing.
        """
        rank = free_rank
        torsion = []
        for d in orders:
            d = int(d)
            if d < 0:
                raise DomainError(f"negative cyclic order {d}")
            if d == 0:
                rank += 1
            elif d == 1:
                continue
            else:
                for p, e in _factor(d).items():
                    torsion.append(p**e)
        return cls(rank, tuple(torsion))

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        if not isinstance(other, FinAbGroup):
            raise DomainError("cannot sum a concrete group with a symbolic one")
        return FinAbGroup(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def power(self, e: int) -> "FinAbGroup":
        if e < 0:
            raise DomainError(f"negative direct-sum exponent {e}")
        return FinAbGroup(self.free_rank * e, self.torsion * e)

    def invariant_factors(self) -> list:
        """Torsion as d_1 >= d_2 >= ... with d_{i+1} | d_i."""
        by_prime = {}
        for q in self.torsion:
            p, e = _prime_power_key(q)
            by_prime.setdefault(p, []).append(e)
        for exps in by_prime.values():
            exps.sort(reverse=True)
        count = max((len(v) for v in by_prime.values()), default=0)
        factors = []
        for i in range(count):
            d = 1
            for p, exps in by_prime.items():
                if i < len(exps):
                    d *= p ** exps[i]
            factors.append(d)
        return factors

    def __str__(self):
        """Invariant-factor rendering, largest torsion first, free part last."""
        parts = []
        factors = self.invariant_factors()
        i = 0
        while i < len(factors):
            j = i
            while j < len(factors) and factors[j] == factors[i]:
                j += 1
            mult = j - i
            base = f"Z/{factors[i]}"
            parts.append(f"({base})^{mult}" if mult > 1 else base)
            i = j
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class MarkerSum:
    """Formal direct sum of opaque marker groups, e.g. G1^3 + G0^2.

    Used by symbolic stems tables to test the assembly bookkeeping without
    committing to any actual group values.
    """

    terms: tuple = ()  # ((name, multiplicity), ...), name-sorted, mults > 0

    def __post_init__(self):
        merged = {}
        for name, mult in self.terms:
            if mult < 0:
                raise DomainError(f"negative multiplicity for {name}")
            if mult:
                merged[name] = merged.get(name, 0) + mult
        object.__setattr__(self, "terms", tuple(sorted(merged.items())))

    def is_trivial(self) -> bool:
        return not self.terms

    def direct_sum(self, other: "MarkerSum") -> "MarkerSum":
        if not isinstance(other, MarkerSum):
            raise DomainError("cannot sum a symbolic group with a concrete one")
        return MarkerSum(self.terms + other.terms)

    def power(self, e: int) -> "MarkerSum":
        if e < 0:
            raise DomainError(f"negative direct-sum exponent {e}")
        return MarkerSum(tuple((name, mult * e) for name, mult in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            name if mult == 1 else f"{name}^{mult}" for name, mult in self.terms
        )


GroupLike = Union[FinAbGroup, MarkerSum]


def direct_sum_power(g: GroupLike, e: int) -> GroupLike:
    """g (+) ... (+) g, e times (e = 0 gives the trivial group).

    >>> str(direct_sum_power(FinAbGroup(1), 3))
    'Z^3'
    """
    return g.power(e)


@dataclass(frozen=True)
class StemsTable:
    """Sphere stems pi_n^s for n = 0..max_index; lower indices are trivial."""

    entries: dict
    max_index: int
    source_note: str = ""

    def __post_init__(self):
        for n in range(self.max_index + 1):
            if n not in self.entries:
                raise ValidationError(f"stems table is missing index {n}")
        first = self.entries[0]
        if isinstance(first, FinAbGroup) and first != FinAbGroup(1, ()):
            raise ValidationError(f"stem 0 must be Z, got {first}")

    @property
    def symbolic(self) -> bool:
        return isinstance(self.entries[0], MarkerSum)

    def zero(self) -> GroupLike:
        return MarkerSum(()) if self.symbolic else FinAbGroup.trivial()

    def lookup(self, n: int) -> GroupLike:
        """Stem n; trivial below 0, error above max_index."""
        if n < 0:
            return self.zero()
        if n > self.max_index:
            raise InsufficientStemsData(n, self.max_index)
        return self.entries[n]

    @classmethod
    def symbolic_table(cls, max_index: int, prefix: str = "G") -> "StemsTable":
        """Table of opaque markers G0, G1, ... for formula-shape tests."""
        entries = {n: MarkerSum(((f"{prefix}{n}", 1),)) for n in range(max_index + 1)}
        return cls(entries=entries, max_index=max_index, source_note="symbolic markers")


_LINE_RE = re.compile(r"^(\d+)\s*:\s*(.+?)\s*$")


def _parse_group_expr(expr: str, where: str) -> FinAbGroup:
    """RHS grammar: `0` | terms `Z` and `Z/a` joined by `+`."""
    expr = expr.strip()
    if expr == "0":
        return FinAbGroup.trivial()
    free = 0
    orders = []
    for term in expr.split("+"):
        term = term.strip()
        if term == "Z":
            free += 1
        elif term.startswith("Z/"):
            body = term[2:].strip()
            if not body.isdigit() or int(body) < 1:
                raise ParseError(f"{where}: bad cyclic order in {term!r}")
            orders.append(int(body))
        else:
            raise ParseError(f"{where}: unrecognized term {term!r}")
    return FinAbGroup.from_orders(free, orders)


def load_stems_table(source: str, source_note: str = "") -> StemsTable:
    """Parse a stems document (line format `n: Z/a + Z/b`, or JSON).

    Line format: one `n: <group>` entry per line, `#` comments allowed.
    JSON: either {"entries": {"0": "Z", ...}, "source_note": "..."} or a
    flat {"0": "Z", ...} object with the same value grammar.
    """
    raw = {}
    note = source_note
    if source.lstrip().startswith("{"):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON stems document: {exc}") from exc
        if "entries" in doc:
            note = note or str(doc.get("source_note", ""))
            items = doc["entries"]
        else:
            items = doc
        if not isinstance(items, Mapping):
            raise ParseError("JSON stems document must be an object of entries")
        for key, val in items.items():
            if not str(key).isdigit():
                raise ParseError(f"entry {key!r}: index must be a nonnegative integer")
            n = int(key)
            if n in raw:
                raise ParseError(f"entry {key!r}: duplicate index")
            raw[n] = _parse_group_expr(str(val), f"entry {key!r}")
    else:
        for lineno, line in enumerate(source.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            m = _LINE_RE.match(line)
            if not m:
                raise ParseError(f"line {lineno}: expected `n: group`, got {line!r}")
            n = int(m.group(1))
            if n in raw:
                raise ParseError(f"line {lineno}: duplicate index {n}")
            raw[n] = _parse_group_expr(m.group(2), f"line {lineno}")
    if not raw:
        raise ParseError("empty stems document")
    max_index = max(raw)
    return StemsTable(entries=raw, max_index=max_index, source_note=note)


@lru_cache(maxsize=None)
def bundled_stems_table() -> StemsTable:
    """The packaged reference table of stems 0..19."""
    text = (
        resources.files("fourfold").joinpath("data/stable_stems.txt").read_text()
    )
    return load_stems_table(text, source_note="bundled reference table, stems 0..19")


def _assemble(stems: StemsTable, contributions) -> GroupLike:
    total = stems.zero()
    for index, exponent in contributions:
        if exponent > 0:
            total = total.direct_sum(stems.lookup(index).power(exponent))
    return total


def stable_homotopy_simply_connected(betti: int, n: int, stems: StemsTable) -> GroupLike:
    """pi_n^s of a simply connected closed 4-manifold with b2 = betti.

    >>> str(stable_homotopy_simply_connected(2, 5, bundled_stems_table()))
    '(Z/24)^2 + Z/2 + Z'
    """
    if betti < 1:
        raise DomainError(f"second Betti number must be >= 1, got {betti}")
    if n < 0:
        raise DomainError(f"stable index must be >= 0, got {n}")
    k = betti
    return _assemble(stems, [(n - 2, k), (n - 3, k - 1), (n - 5, 1)])


def stable_homotopy_finite_pi1(
    pi2_rank: int, n: int, m: int, stems: StemsTable
) -> GroupLike:
    """Same assembly for finite fundamental group of order m (m = 1: no change)."""
    if pi2_rank < 1:
        raise DomainError(f"rank of pi_2 must be >= 1, got {pi2_rank}")
    if m < 1:
        raise DomainError(f"order of the fundamental group must be >= 1, got {m}")
    if n < 0:
        raise DomainError(f"stable index must be >= 0, got {n}")
    k = pi2_rank
    return _assemble(
        stems, [(n - 2, k), (n - 3, k - 1), (n - 5, 1), (n - 1, m - 1)]
    )


def integral_low_homotopy(betti: int) -> Tuple[FinAbGroup, FinAbGroup]:
    """(pi_3, pi_4) as honest abelian groups, for b2 >= 3.

    With c = b2 - 1: pi_3 = Z^(c(c+3)/2) and
    pi_4 = Z^((c-1)(c+1)(c+3)/3) (+) (Z/2)^(2c).

    >>> tuple(str(g) for g in integral_low_homotopy(3))
    ('Z^5', '(Z/2)^4 + Z^5')
    """
    if betti < 3:
        raise DomainError(f"integral low homotopy needs b2 >= 3, got {betti}")
    c = betti - 1
    r3 = c * (c + 3)
    r4 = (c - 1) * (c + 1) * (c + 3)
    if r3 % 2 or r4 % 3:
        raise InternalInconsistency("closed-form rank is not integral")
    pi3 = FinAbGroup(r3 // 2, ())
    pi4 = FinAbGroup(r4 // 3, (2,) * (2 * c))
    return pi3, pi4
