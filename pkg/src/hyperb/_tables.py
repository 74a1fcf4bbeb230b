"""Cached combinatorial tables for small subset lattices.

Internal module.  Everything here works on raw integers:

* a *mask* is an n-bit subset of positions 0..n-1 (position j is the j-th
  smallest ground label),
* a *rank* is the 0-indexed position of a mask in the size-then-lex order,
* a *family bitset* packs a family of subsets into one integer over the
  2^n-element universe: bit r is set iff the subset of rank r is a member.

Family bitsets make the heavy sweeps cheap: intersecting common
neighborhoods is a single big-int AND per family member, and an initial
segment is exactly a bitset of the form 2^m - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

# Tables are materialized per ground size; 2^14 entries is already beyond
# every sweep in the suite (exhaustive checks stop at n=4, sampling at n=12).
MAX_TABLE_BITS = 14


def _check_table_size(n: int) -> None:
    if not 0 <= n <= MAX_TABLE_BITS:
        raise ValueError(
            f"ground size {n} exceeds the desk-scale table capacity "
            f"({MAX_TABLE_BITS} bits)"
        )


@lru_cache(maxsize=None)
def masks_in_order(n: int) -> tuple[int, ...]:
    """All n-bit masks ordered by popcount, then lexicographically.

    Within one size level, itertools.combinations yields the sorted element
    tuples in ascending lexicographic order, which is exactly the order
    induced by "smallest differing label wins".
    """
    _check_table_size(n)
    out = []
    for k in range(n + 1):
        for combo in combinations(range(n), k):
            m = 0
            for c in combo:
                m |= 1 << c
            out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def rank_of_mask(n: int) -> tuple[int, ...]:
    """Inverse permutation of masks_in_order, indexed by mask."""
    table = [0] * (1 << n)
    for r, m in enumerate(masks_in_order(n)):
        table[m] = r
    return tuple(table)


def universe_bits(n: int) -> int:
    """Family bitset holding every subset of an n-element ground set."""
    return (1 << (1 << n)) - 1


def prefix_bits(m: int) -> int:
    """Family bitset of the first m subsets (an initial segment)."""
    return (1 << m) - 1


def is_prefix_bits(bits: int) -> bool:
    """True iff the bitset is an initial segment (a run of low bits)."""
    return bits & (bits + 1) == 0


def iter_bits(bits: int):
    """Yield the indices of the set bits, lowest first."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@lru_cache(maxsize=None)
def balls(n: int) -> tuple[tuple[int, ...], ...]:
    """balls(n)[p][mask] = family bitset of all y with |mask xor y| <= p.

    Built incrementally by Hamming shells so the whole p = 0..n stack costs
    one pass over all 4^n (x, offset) pairs.
    """
    _check_table_size(n)
    order = masks_in_order(n)
    rankbit = [0] * (1 << n)
    for r, m in enumerate(order):
        rankbit[m] = 1 << r
    size = 1 << n
    cur = list(rankbit)  # p = 0: just the point itself
    out = [tuple(cur)]
    for p in range(1, n + 1):
        shell = [m for m in order if m.bit_count() == p]
        nxt = []
        for x in range(size):
            acc = cur[x]
            for e in shell:
                acc |= rankbit[x ^ e]
            nxt.append(acc)
        cur = nxt
        out.append(tuple(cur))
    return tuple(out)


def closed_bits(family: int, n: int, p: int) -> int:
    """Family bitset of the common closed p-neighborhood of `family`.

    Empty family yields the full universe (vacuous quantification).  Stops
    as soon as the running intersection is empty.
    """
    if p < 0:
        raise ValueError("radius must be non-negative")
    if p >= n:
        return universe_bits(n)
    ball = balls(n)[p]
    order = masks_in_order(n)
    acc = universe_bits(n)
    rest = family
    while rest:
        low = rest & -rest
        acc &= ball[order[low.bit_length() - 1]]
        if not acc:
            return 0
        rest ^= low
    return acc


def closed_size_bits(family: int, n: int, p: int) -> int:
    """|C^p[family]| computed by intersecting member balls."""
    return closed_bits(family, n, p).bit_count()


def open_size_bits(family: int, n: int, p: int) -> int:
    """|C^p(family)| = members of the closed neighborhood outside the family."""
    return (closed_bits(family, n, p) & ~family).bit_count()


@lru_cache(maxsize=None)
def initial_segment_closed_sizes(n: int, p: int) -> tuple[int, ...]:
    """sizes[m] = |C^p[I_m]| for every prefix length m, via incremental ANDs."""
    order = masks_in_order(n)
    ball = balls(n)[min(p, n)]
    cur = universe_bits(n)
    sizes = [cur.bit_count()]
    for mask in order:
        cur &= ball[mask]
        sizes.append(cur.bit_count())
    return tuple(sizes)


@lru_cache(maxsize=None)
def initial_segment_open_sizes(n: int, p: int) -> tuple[int, ...]:
    """sizes[m] = |C^p(I_m)| for every prefix length m."""
    order = masks_in_order(n)
    ball = balls(n)[min(p, n)]
    cur = universe_bits(n)
    sizes = [cur.bit_count()]
    seg = 0
    for m, mask in enumerate(order):
        seg |= 1 << m  # rank of `mask` is m
        cur &= ball[mask]
        sizes.append((cur & ~seg).bit_count())
    return tuple(sizes)


@dataclass(frozen=True)
class SectionTables:
    """Split/merge tables for fixing one coordinate of the ground set.

    Position j of the n-bit ground is removed; the remaining positions are
    compacted to an (n-1)-bit subground.  Compaction preserves the relative
    order of labels, so subground ranks use original-label semantics.
    """

    n: int
    j: int
    minus_selector: int            # ranks over [n] whose mask avoids bit j
    compact_rank: tuple[int, ...]  # rank over [n] -> rank of compacted mask
    expand_minus: tuple[int, ...]  # subground rank -> rankbit over [n], bit j clear
    expand_plus: tuple[int, ...]   # subground rank -> rankbit over [n], bit j set
    minus_prefix: tuple[int, ...]  # m -> family bitset of expanded I_m (bit j clear)
    plus_prefix: tuple[int, ...]   # m -> family bitset of expanded I_m + {j}


@lru_cache(maxsize=None)
def section_tables(n: int, j: int) -> SectionTables:
    if not 0 <= j < n:
        raise ValueError(f"coordinate {j} out of range for ground size {n}")
    order_n = masks_in_order(n)
    rank_n = rank_of_mask(n)
    sub_rank = rank_of_mask(n - 1)
    sub_order = masks_in_order(n - 1)
    bit = 1 << j
    low_mask = bit - 1

    minus_selector = 0
    compact_rank = []
    for r, m in enumerate(order_n):
        compact = (m & low_mask) | ((m >> (j + 1)) << j)
        compact_rank.append(sub_rank[compact])
        if not m & bit:
            minus_selector |= 1 << r

    expand_minus = []
    expand_plus = []
    for m_sub in sub_order:
        expanded = (m_sub & low_mask) | ((m_sub >> j) << (j + 1))
        expand_minus.append(1 << rank_n[expanded])
        expand_plus.append(1 << rank_n[expanded | bit])

    minus_prefix = [0]
    plus_prefix = [0]
    for rb_minus, rb_plus in zip(expand_minus, expand_plus):
        minus_prefix.append(minus_prefix[-1] | rb_minus)
        plus_prefix.append(plus_prefix[-1] | rb_plus)

    return SectionTables(
        n=n,
        j=j,
        minus_selector=minus_selector,
        compact_rank=tuple(compact_rank),
        expand_minus=tuple(expand_minus),
        expand_plus=tuple(expand_plus),
        minus_prefix=tuple(minus_prefix),
        plus_prefix=tuple(plus_prefix),
    )


def split_bits(family: int, n: int, j: int) -> tuple[int, int]:
    """Sections of a family bitset: (members avoiding j, members containing j
    with j dropped), both as bitsets over the (n-1)-bit subground."""
    t = section_tables(n, j)
    minus = plus = 0
    for r in iter_bits(family):
        if t.minus_selector >> r & 1:
            minus |= 1 << t.compact_rank[r]
        else:
            plus |= 1 << t.compact_rank[r]
    return minus, plus


def join_bits(minus: int, plus: int, n: int, j: int) -> int:
    """Inverse of split_bits: reassemble a family bitset over the full ground."""
    t = section_tables(n, j)
    out = 0
    for r in iter_bits(minus):
        out |= t.expand_minus[r]
    for r in iter_bits(plus):
        out |= t.expand_plus[r]
    return out


def compress_bits(family: int, n: int, j: int) -> int:
    """One coordinate compression: replace both sections by equal-size
    initial segments of the subground."""
    t = section_tables(n, j)
    a = (family & t.minus_selector).bit_count()
    b = family.bit_count() - a
    return t.minus_prefix[a] | t.plus_prefix[b]
