"""Partitions, multipartitions and the combinatorics around them.

Partitions are plain tuples of positive ints in weakly decreasing order, and
multipartitions are tuples of partitions.  Where a fixed number of rows
matters (row colors, colored removals) partitions are padded with zeros.

Enumeration order used everywhere ("canonical-v1"):
  * partitions of n in reverse lexicographic order, (n) first and (1^n) last;
  * weak compositions in reverse lexicographic order, (n,0,...,0) first;
  * multipartitions grouped by size vector (reverse lex), then by the
    components in reverse lex order, the first component varying slowest.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, NamedTuple, Sequence

Partition = tuple
MultiPartition = tuple


class SizeMismatch(ValueError):
    pass


class NotContained(ValueError):
    pass


class MalformedSequence(ValueError):
    pass


class NonEmptyCore(ValueError):
    pass


class NotPermutation(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class SkewAnalysis(NamedTuple):
    is_generalized_ribbon: bool
    cc: int
    ht: int


# basic statistics

def size(lam: Sequence[int]) -> int:
    return sum(lam)


def mp_size(lam: MultiPartition) -> int:
    return sum(sum(c) for c in lam)


def length(lam: Sequence[int]) -> int:
    """Number of positive parts."""
    return sum(1 for x in lam if x > 0)


def mp_length(lam: MultiPartition) -> int:
    return sum(length(c) for c in lam)


def canonical(lam: Sequence[int]) -> Partition:
    return tuple(x for x in lam if x > 0)


def is_partition(lam: Sequence[int]) -> bool:
    return all(x > 0 for x in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def contains(lam: Sequence[int], mu: Sequence[int]) -> bool:
    if len(canonical(mu)) > len(lam):
        return False
    return all(m <= l for l, m in zip(lam, mu))


def z_lambda(lam: Sequence[int]) -> int:
    """Centralizer order prod_i i^{m_i} m_i!."""
    out = 1
    for part, grp in itertools.groupby(canonical(lam)):
        k = len(list(grp))
        out *= part ** k * factorial(k)
    return out


def num_syt(lam: Sequence[int]) -> int:
    """Number of standard tableaux of shape lam, by the hook length formula."""
    lam = canonical(lam)
    if not lam:
        return 1
    conj = conjugate(lam)
    hooks = prod(lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i]))
    return factorial(sum(lam)) // hooks


def conjugate(lam: Sequence[int]) -> Partition:
    lam = canonical(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def is_hook(lam: Sequence[int]) -> bool:
    lam = canonical(lam)
    return len(lam) <= 1 or all(x == 1 for x in lam[1:])


# skew shapes

def _skew_stats(lam: Sequence[int], mu: Sequence[int]):
    """(has_block, cc, ht) of lam/mu, assuming containment.

    Row i holds columns mu_i+1..lam_i.  Rows i and i+1 share lam_{i+1} - mu_i
    columns, so they touch when that is >= 1 and contain a 2x2 block when >= 2.
    """
    n = len(lam)
    mu = tuple(mu) + (0,) * (n - len(mu))
    cc = 0
    rows = 0
    block = False
    prev_nonempty = False
    for i in range(n):
        nonempty = lam[i] > mu[i]
        if nonempty:
            rows += 1
            overlap = lam[i] - mu[i - 1] if i > 0 and prev_nonempty else 0
            if overlap >= 2:
                block = True
            if overlap < 1:
                cc += 1
        prev_nonempty = nonempty
    return block, cc, rows - cc


def analyze_skew(lam: Sequence[int], mu: Sequence[int]) -> SkewAnalysis:
    """Generalized-ribbon test plus (cc, ht) for lam/mu; raises NotContained."""
    lam, mu = canonical(lam), canonical(mu)
    if not contains(lam, mu):
        raise NotContained(f"{mu} is not contained in {lam}")
    block, cc, ht = _skew_stats(lam, mu)
    return SkewAnalysis(not block, cc, ht)


def subpartitions_with_size(lam: Sequence[int], s: int) -> Iterator[Partition]:
    """Every mu inside lam with |mu| = s, in reverse lexicographic order."""
    lam = canonical(lam)
    n = len(lam)
    cur = []

    def rec(i, bound, rem):
        if rem == 0:
            yield tuple(cur)
            return
        if i == n:
            return
        hi = min(lam[i], bound, rem)
        for v in range(hi, 0, -1):
            # the rows below can hold at most min(lam_j, v) each
            room = sum(min(lam[j], v) for j in range(i + 1, n))
            if v + room < rem:
                break
            cur.append(v)
            yield from rec(i + 1, v, rem - v)
            cur.pop()

    if 0 <= s <= sum(lam):
        yield from rec(0, lam[0] if lam else 0, s)


# enumeration

@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def compositions(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Weak compositions of n into m parts (the set C_{n,m})."""
    if m == 0:
        return ((),) if n == 0 else ()
    out = []
    for first in range(n, -1, -1):
        for rest in compositions(n - first, m - 1):
            out.append((first,) + rest)
    return tuple(out)


def positive_compositions(n: int, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Compositions of n with strictly positive parts, optionally of bounded length."""
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(n, 0, -1):
        for rest in positive_compositions(n - first, None if max_len is None else max_len - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _multipartitions(n: int, m: int) -> tuple[MultiPartition, ...]:
    out = []
    for c in compositions(n, m):
        out.extend(itertools.product(*(partitions(k) for k in c)))
    return tuple(out)


def multipartitions(n: int, m: int) -> Iterator[MultiPartition]:
    """All m-multipartitions of n in canonical order."""
    return iter(_multipartitions(n, m))


def empty_mp(m: int) -> MultiPartition:
    return ((),) * m


# boundary sequences

@dataclass(frozen=True)
class BoundarySeq:
    bits: tuple[int, ...]
    anchor: int

    def __str__(self):
        b = "".join(map(str, self.bits))
        return f"{b[:self.anchor]}|{b[self.anchor:]}"

    def zeros(self) -> int:
        return self.bits.count(0)


def _anchor(bits: Sequence[int]) -> int:
    # f(i) = #1s in bits[:i] - #0s in bits[i:] rises by one at every step
    return bits.count(0)


def boundary_sequence(lam: Sequence[int], pad_leading_zeros: int = 0, pad_trailing_ones: int = 0) -> BoundarySeq:
    """Boundary walk from the south-west corner: 1 for a horizontal step, 0 for a vertical one."""
    lam = canonical(lam)
    bits: list[int] = []
    prev = 0
    for part in reversed(lam):
        bits.extend([1] * (part - prev))
        bits.append(0)
        prev = part
    bits = [0] * pad_leading_zeros + bits + [1] * pad_trailing_ones
    return BoundarySeq(tuple(bits), _anchor(bits))


def _bits_to_partition(bits: Sequence[int]) -> Partition:
    ones = 0
    rows = []
    for b in bits:
        if b == 1:
            ones += 1
        else:
            rows.append(ones)
    return canonical(reversed(rows))


def partition_from_boundary(seq: BoundarySeq) -> Partition:
    if any(b not in (0, 1) for b in seq.bits):
        raise MalformedSequence("bits must be 0 or 1")
    a = seq.anchor
    if not 0 <= a <= len(seq.bits) or seq.bits[:a].count(1) != seq.bits[a:].count(0):
        raise MalformedSequence(f"anchor {a} does not balance the sequence {seq.bits}")
    return _bits_to_partition(seq.bits)


def quotient_boundary(quot: MultiPartition) -> BoundarySeq:
    """Interleaved boundary sequence of Psi_m(quot), with equal-anchor padding."""
    m = len(quot)
    seqs = [boundary_sequence(c) for c in quot]
    a = max(s.anchor for s in seqs)
    padded = [(0,) * (a - s.anchor) + s.bits for s in seqs]
    width = max(len(p) for p in padded)
    padded = [p + (1,) * (width - len(p)) for p in padded]
    bits = tuple(padded[i][t] for t in range(width) for i in range(m))
    return BoundarySeq(bits, m * a)


def quotient_compose(quot: MultiPartition) -> Partition:
    """Psi_m: the partition with empty m-core and m-quotient quot."""
    return partition_from_boundary(quotient_boundary(quot))


def quotient_decompose(lam: Sequence[int], m: int) -> MultiPartition:
    lam = canonical(lam)
    seq = boundary_sequence(lam)
    lead = (-seq.anchor) % m
    bits = (0,) * lead + seq.bits
    bits = bits + (1,) * ((-len(bits)) % m)
    quot = tuple(_bits_to_partition(bits[i::m]) for i in range(m))
    if m * mp_size(quot) != sum(lam):
        raise NonEmptyCore(f"{lam} has a nonempty {m}-core")
    return quot


# row colors and crossing statistics

def pad(lam: Sequence[int], L: int) -> tuple[int, ...]:
    lam = tuple(lam)
    if len(canonical(lam)) > L:
        raise ValueError(f"{lam} has more than {L} rows")
    return canonical(lam) + (0,) * (L - len(canonical(lam)))


def row_color(lam: Sequence[int], m: int, k: int) -> tuple[int, ...]:
    """Colors a_i in 1..m with a_i = lam_i + k - i + 1 mod m (rows 1-based)."""
    return tuple((lam[i - 1] + k - i) % m + 1 for i in range(1, len(lam) + 1))


def inv_count(seq: Sequence[int]) -> int:
    n = len(seq)
    return sum(1 for i in range(n) for j in range(i + 1, n) if seq[i] > seq[j])


def min_cross(a: Sequence[int], b: Sequence[int]) -> int:
    """Fewest crossings when equal values of a are joined to equal values of b."""
    if sorted(a) != sorted(b):
        raise NotPermutation(f"{b} is not a rearrangement of {a}")
    slots: dict = {}
    for j, x in enumerate(b):
        slots.setdefault(x, []).append(j)
    seen: dict = {}
    sigma = []
    for x in a:
        r = seen.get(x, 0)
        sigma.append(slots[x][r])
        seen[x] = r + 1
    return inv_count(sigma)


# text form

def format_partition(lam: Sequence[int]) -> str:
    return "(" + ",".join(map(str, canonical(lam))) + ")"


def format_multipartition(lam: MultiPartition) -> str:
    return "(" + ",".join(format_partition(c) for c in lam) + ")"


def parse_multipartition(text: str) -> MultiPartition:
    """Parse "((3,1),(2,1,1),())".  Whitespace is ignored."""
    s = text
    i = 0

    def skip():
        nonlocal i
        while i < len(s) and s[i].isspace():
            i += 1

    def expect(ch):
        nonlocal i
        skip()
        if i >= len(s) or s[i] != ch:
            found = repr(s[i]) if i < len(s) else "end of input"
            raise ParseError(f"expected {ch!r}, found {found}", i)
        i += 1

    def integer():
        nonlocal i
        skip()
        j = i
        while i < len(s) and s[i].isdigit():
            i += 1
        if j == i:
            raise ParseError("expected a positive integer", j)
        v = int(s[j:i])
        if v == 0:
            raise ParseError("parts must be positive", j)
        return v, j

    def component():
        nonlocal i
        expect("(")
        skip()
        parts = []
        if i < len(s) and s[i] == ")":
            i += 1
            return ()
        while True:
            v, at = integer()
            if parts and v > parts[-1]:
                raise ParseError("parts must weakly decrease", at)
            parts.append(v)
            skip()
            if i < len(s) and s[i] == ",":
                i += 1
                continue
            expect(")")
            return tuple(parts)

    expect("(")
    comps = [component()]
    while True:
        skip()
        if i < len(s) and s[i] == ",":
            i += 1
            comps.append(component())
            continue
        expect(")")
        break
    skip()
    if i != len(s):
        raise ParseError("trailing characters", i)
    return tuple(comps)
