"""Exact invariants of numerical semigroups given by finite generator sets.

For a finite set A of positive integers, <A> is the set of all finite sums
of elements of A (including the empty sum 0).  When gcd(A) = 1 the
complement N \\ <A> is finite and three classical invariants are defined:

* Frobenius number F: the largest integer not in <A>.  For the gap-free
  case <A> = N we use the convention F = -1 (so F + 1 is always the start
  of the final cofinite run).
* genus g: the number of positive integers not in <A>.
* embedding dimension e: the size of the unique minimal generating set,
  the elements of <A> \\ {0} that are not a sum of two nonzero elements.

Everything exact runs through the table of residue-class minima with
respect to a nonzero element m of the semigroup: entry i is the least
element of <A> congruent to i mod m.  Then

    F = max(entries) - m          and         g = sum_i floor(entries[i] / m),

and the table is computed as single-source shortest paths on Z_m (edge
i -> (i + a) mod m with weight a for each generator a), never by scanning
an interval of integers.  Membership tables over a bounded range are kept
bit-packed: bit x of an int is the membership of x.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


class InvalidGeneratorError(ValueError):
    """A proposed generator is not a positive integer."""


class NotCofiniteError(ValueError):
    """gcd of the generators is not 1, so the complement is infinite."""


@dataclass(frozen=True)
class GeneratorSet:
    """Sorted, duplicate-free generators plus their gcd (0 when empty)."""

    elements: tuple[int, ...]
    gcd: int

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def is_cofinite(self) -> bool:
        return self.gcd == 1


def normalize_generators(raw: Iterable[int]) -> GeneratorSet:
    """Validate, sort, and deduplicate raw generators.

    Raises InvalidGeneratorError unless every value is an integer >= 1.
    An empty input is allowed and yields gcd 0 (the trivial semigroup {0}).
    """
    seen = set()
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidGeneratorError(f"generator {v!r} is not an integer")
        if v < 1:
            raise InvalidGeneratorError(f"generator {v} is not positive")
        seen.add(v)
    elements = tuple(sorted(seen))
    return GeneratorSet(elements, math.gcd(*elements) if elements else 0)


@dataclass(frozen=True)
class MembershipTable:
    """Bit-packed membership of <A> on [0, limit]: bit x set iff x in <A>."""

    bits: int
    limit: int

    def __len__(self) -> int:
        return self.limit + 1

    def __getitem__(self, x: int) -> bool:
        if not 0 <= x <= self.limit:
            raise IndexError(f"{x} outside table range [0, {self.limit}]")
        return bool((self.bits >> x) & 1)

    def members(self) -> list[int]:
        return [x for x in range(self.limit + 1) if (self.bits >> x) & 1]


def membership_table(gens: GeneratorSet, limit: int) -> MembershipTable:
    """All sums of generators up to ``limit`` (works for any gcd).

    Unbounded-knapsack closure on a bitset: for each generator a, OR-ing
    the table with its own shift by a doubles the reachable multiples of
    a, so each generator closes in O(log limit) big-int operations.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    mask = (1 << (limit + 1)) - 1
    bits = 1  # the empty sum
    for a in gens.elements:
        if a > limit:
            break  # elements are sorted; nothing below the cutoff remains
        prev = -1
        while bits != prev:
            prev = bits
            bits |= (bits << a) & mask
    return MembershipTable(bits, limit)


@dataclass(frozen=True)
class AperyTable:
    """Residue-class minima of <A> with respect to m: entries[i] is the
    least element congruent to i mod m.  entries[0] is always 0."""

    m: int
    entries: tuple[int, ...]


def apery_set(gens: GeneratorSet, m: int) -> AperyTable:
    """Class minima via Dijkstra on Z_m.

    Requires gcd(gens + {m}) = 1 (otherwise some class is unreachable and
    NotCofiniteError is raised) and m in <A> (otherwise the minima would
    not coincide with {x in <A> : x - m not in <A>}; ValueError).
    Generators are reduced mod m only to form edge targets; weights stay
    the original values.  Per residue class only the smallest generator
    matters, so larger ones are dropped up front.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    if math.gcd(gens.gcd, m) != 1:
        raise NotCofiniteError(
            f"gcd(generators + {{{m}}}) = {math.gcd(gens.gcd, m)} != 1; "
            "some residue class mod m is never reached"
        )
    if m not in gens.elements and not membership_table(gens, m)[m]:
        raise ValueError(f"m = {m} is not an element of the semigroup")

    weight: dict[int, int] = {}
    for a in gens.elements:
        r = a % m
        if r == 0:
            continue  # multiples of m never improve a class minimum
        if r not in weight or a < weight[r]:
            weight[r] = a
    edges = sorted(weight.items())

    inf = float("inf")
    dist: list[float] = [inf] * m
    dist[0] = 0
    heap: list[tuple[int, int]] = [(0, 0)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for r, a in edges:
            u = v + r
            if u >= m:
                u -= m
            nd = d + a
            if nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return AperyTable(m, tuple(int(d) for d in dist))


def _require_cofinite(gens: GeneratorSet) -> None:
    if gens.gcd != 1:
        raise NotCofiniteError(
            f"gcd of generators is {gens.gcd}; invariants need gcd 1"
        )


def frobenius(gens: GeneratorSet) -> int:
    """Largest integer outside <A>; -1 when <A> = N (gap-free convention)."""
    _require_cofinite(gens)
    m = gens.elements[0]
    table = apery_set(gens, m)
    return max(table.entries) - m


def genus(gens: GeneratorSet) -> int:
    """Number of positive integers outside <A>."""
    _require_cofinite(gens)
    m = gens.elements[0]
    table = apery_set(gens, m)
    return sum(e // m for e in table.entries)


def minimal_generators(gens: GeneratorSet) -> GeneratorSet:
    """The unique minimal generating set of <A>.

    An element a is minimal iff it is not x + y with x, y nonzero members;
    it suffices to test a - g for generators g < a, since any nonzero
    member contains some generator as a summand.
    """
    _require_cofinite(gens)
    table = membership_table(gens, gens.elements[-1])
    bits = table.bits
    minimal = tuple(
        a
        for a in gens.elements
        if not any(g < a and (bits >> (a - g)) & 1 for g in gens.elements)
    )
    return GeneratorSet(minimal, math.gcd(*minimal))


@dataclass(frozen=True)
class SemigroupInvariants:
    frobenius: int
    genus: int
    embedding_dimension: int
    minimal_generators: GeneratorSet


def invariants(gens: GeneratorSet) -> SemigroupInvariants:
    """Frobenius number, genus, and embedding dimension in one pass.

    One residue-minima table (for the smallest generator) yields F and g;
    the minimal generating set comes from a membership table up to the
    largest generator.
    """
    _require_cofinite(gens)
    m = gens.elements[0]
    table = apery_set(gens, m)
    frob = max(table.entries) - m
    gen_count = sum(e // m for e in table.entries)
    minimal = minimal_generators(gens)
    return SemigroupInvariants(frob, gen_count, len(minimal), minimal)


@dataclass(frozen=True)
class WilfReport:
    """Exact check of (F + 1 - g) / (F + 1) >= 1 / e.

    Both sides are Fractions, no rounding.  For F = -1 the quantities are
    undefined; by convention the report holds with lhs recorded as 1.
    A failing report is surveillance output, never an assertion: callers
    count violations, they do not crash.
    """

    holds: bool
    lhs: Fraction
    rhs: Fraction


def wilf_check(inv: SemigroupInvariants) -> WilfReport:
    rhs = Fraction(1, inv.embedding_dimension)
    if inv.frobenius == -1:
        return WilfReport(True, Fraction(1), rhs)
    lhs = Fraction(inv.frobenius + 1 - inv.genus, inv.frobenius + 1)
    return WilfReport(lhs >= rhs, lhs, rhs)
