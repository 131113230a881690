"""k-fold sumsets of subsets of Z_q, subset-sum counts, and coverage trials.

Subsets of Z_q are bit-packed (bit r set iff residue r is a member), so a
sumset step is a handful of big-int shifts and ORs.  The coverage
experiment draws a uniform random s-subset A of Z_q with s = 2*ceil(b*log2 q)
and asks whether the k-fold sumset of A with k = ceil(b*log2 q) is all of
Z_q; the probability that it is not is at most

    (2*b*log2(q) + 3) / q^(b-2),

which ``coverage_failure_bound`` evaluates.  Exact subset-sum counts obey,
for prime q and 1 <= k < q, |{A : |A| = k, sum(A) = z (mod q)}| = C(q,k)/q
independently of z; ``count_subsets_with_sum`` checks small cases by
enumeration and exposes the closed form behind an explicit method flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .rng import TAG_COVERAGE, randbelow, substream

# Deterministic Miller-Rabin witnesses, valid for all n < 2^64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n <= 2^64 - 1."""
    if n >= 1 << 64:
        raise ValueError("is_prime is only deterministic below 2^64")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CyclicSubset:
    """Immutable subset of Z_q, bit-packed: bit r set iff r is a member."""

    q: int
    bits: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("q must be >= 1")
        if self.bits < 0 or self.bits >> self.q:
            raise ValueError("bits outside [0, 2^q)")

    @classmethod
    def from_elements(cls, q: int, elements: Iterable[int]) -> "CyclicSubset":
        bits = 0
        for e in elements:
            if not 0 <= e < q:
                raise ValueError(f"element {e} outside Z_{q}")
            bits |= 1 << e
        return cls(q, bits)

    @classmethod
    def full(cls, q: int) -> "CyclicSubset":
        return cls(q, (1 << q) - 1)

    def elements(self) -> tuple[int, ...]:
        return tuple(r for r in range(self.q) if (self.bits >> r) & 1)

    def __contains__(self, r: int) -> bool:
        return 0 <= r < self.q and bool((self.bits >> r) & 1)

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << self.q) - 1


def _cyclic_shift(bits: int, y: int, q: int) -> int:
    y %= q
    if y == 0:
        return bits
    mask = (1 << q) - 1
    return ((bits << y) | (bits >> (q - y))) & mask


def add_sets(x: CyclicSubset, y: CyclicSubset) -> CyclicSubset:
    """{a + b mod q : a in x, b in y}; empty if either operand is empty."""
    if x.q != y.q:
        raise ValueError(f"modulus mismatch: {x.q} != {y.q}")
    q = x.q
    if x.bits == 0 or y.bits == 0:
        return CyclicSubset(q, 0)
    if x.is_full or y.is_full:  # both known nonempty here
        return CyclicSubset.full(q)
    if x.size > y.size:  # shift the larger set by members of the smaller
        x, y = y, x
    acc = 0
    for e in x.elements():
        acc |= _cyclic_shift(y.bits, e, q)
    return CyclicSubset(q, acc)


def k_fold_sumset(a: CyclicSubset, k: int) -> CyclicSubset:
    """A + A + ... + A (k summands, repetition allowed), by binary powering."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if a.bits == 0:
        raise ValueError("k-fold sumset of the empty set is undefined")
    result: CyclicSubset | None = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else add_sets(result, base)
        k >>= 1
        if k:
            base = add_sets(base, base)
    assert result is not None
    return result


def k_distinct_sumset(a: CyclicSubset, k: int) -> CyclicSubset:
    """Sums of k *distinct* members of a (a subset of the k-fold sumset)."""
    if not 1 <= k <= a.size:
        raise ValueError(f"k must be in [1, {a.size}], got {k}")
    # layers[c] = residues reachable as a sum of c distinct members so far
    layers = [0] * (k + 1)
    layers[0] = 1
    for e in a.elements():
        for c in range(k, 0, -1):
            if layers[c - 1]:
                layers[c] |= _cyclic_shift(layers[c - 1], e, a.q)
    return CyclicSubset(a.q, layers[k])


_BRUTE_LIMIT = 10**7


def count_subsets_with_sum(q: int, k: int, z: int, method: str = "auto") -> int:
    """Number of k-element subsets of Z_q with sum congruent to z mod q.

    method="auto" enumerates when C(q, k) <= 10^7 and refuses otherwise;
    method="closed" uses C(q, k) / q, exact for prime q (z plays no role);
    method="brute" forces enumeration.  Requires q prime and 1 <= k < q.
    """
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if not 1 <= k < q:
        raise ValueError(f"k must satisfy 1 <= k < q, got {k}")
    z %= q
    total = math.comb(q, k)
    if method == "closed":
        return total // q
    if method not in ("auto", "brute"):
        raise ValueError(f"unknown method {method!r}")
    if total > _BRUTE_LIMIT:
        raise ValueError(
            f"C({q},{k}) = {total} subsets is too many to enumerate; "
            'pass method="closed" for the exact closed form'
        )
    return sum(1 for c in combinations(range(q), k) if sum(c) % q == z)


def coverage_failure_bound(q: int, b: float) -> float:
    """(2*b*log2(q) + 3) / q^(b-2); a bound on the non-coverage probability."""
    return (2 * b * math.log2(q) + 3) / q ** (b - 2)


def coverage_trial(q: int, b: float, master_seed: int, trial_index: int) -> bool:
    """One coverage draw: uniform s-subset A, true iff k*A covers Z_q.

    s = 2*ceil(b*log2 q) and k = ceil(b*log2 q) (ceilings throughout).
    The subset comes from a partial Fisher-Yates shuffle on the trial's
    substream, so each trial is reproducible in isolation.
    """
    if not is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    k = math.ceil(b * math.log2(q))
    s = 2 * k
    if s > q:
        raise ValueError(f"subset size 2*ceil(b*log2 q) = {s} exceeds q = {q}")
    rng = substream(master_seed, TAG_COVERAGE, trial_index)
    pool = list(range(q))
    for i in range(s):
        j = i + randbelow(rng, q - i)
        pool[i], pool[j] = pool[j], pool[i]
    a = CyclicSubset.from_elements(q, pool[:s])
    return k_fold_sumset(a, k).is_full


@dataclass(frozen=True)
class CoverageExperiment:
    """Tally of coverage trials at fixed (q, b) plus the proved bound."""

    q: int
    b: float
    s: int
    k: int
    trials: int
    failures: int
    bound: float

    @property
    def empirical_rate(self) -> float:
        return self.failures / self.trials


def run_coverage_experiment(
    q: int, b: float, trials: int, master_seed: int
) -> CoverageExperiment:
    """Repeated coverage trials; failures counts non-covering draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    k = math.ceil(b * math.log2(q))
    failures = sum(
        0 if coverage_trial(q, b, master_seed, t) else 1 for t in range(trials)
    )
    return CoverageExperiment(
        q, b, 2 * k, k, trials, failures, coverage_failure_bound(q, b)
    )
