"""Pure-Python model-set kernel.

A model set over ``width`` argument positions is stored as a single int
(a truth table): bit ``v`` is set iff the model whose value as a binary
number is ``v`` belongs to the set.  Coordinates are counted from the
least significant end of the model value, so coordinate ``width - j``
carries argument position ``j`` (position 1 is the most significant
digit).

All functions are pure; masks are cached per (width, coordinate).
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def full_mask(width: int) -> int:
    """Table containing every width-bit model."""
    return (1 << (1 << width)) - 1


@lru_cache(maxsize=None)
def var_mask(width: int, coord: int) -> int:
    """Table of all models whose bit at `coord` is 1."""
    if not 0 <= coord < width:
        raise ValueError(f"coordinate {coord} out of range for width {width}")
    stride = 1 << coord
    block = ((1 << stride) - 1) << stride
    period = stride << 1
    while period < (1 << width):
        block |= block << period
        period <<= 1
    return block


def count(table: int) -> int:
    """Number of models in the table."""
    return table.bit_count()


def indices(table: int) -> list[int]:
    """Model values present in the table, ascending."""
    out = []
    while table:
        low = table & -table
        out.append(low.bit_length() - 1)
        table ^= low
    return out


def exists_coord(table: int, width: int, coord: int) -> int:
    """Make `coord` don't-care: OR of both cofactors, filled into both planes."""
    stride = 1 << coord
    vm = var_mask(width, coord)
    low = (table & ~vm) | ((table & vm) >> stride)
    return low | (low << stride)


def swap_coords(table: int, width: int, i: int, j: int) -> int:
    """Exchange coordinates i and j (delta swap on the table)."""
    if i == j:
        return table
    if i > j:
        i, j = j, i
    delta = (1 << j) - (1 << i)
    m = var_mask(width, i) & ~var_mask(width, j)
    x = (table ^ (table >> delta)) & m
    return table ^ x ^ (x << delta)


def drop_coord(table: int, width: int, coord: int) -> int:
    """Remove a coordinate, keeping the coord=0 plane; result has width-1.

    The coordinate should be don't-care (use exists_coord first to
    project it away instead of slicing it).
    """
    for k in range(coord, width - 1):
        table = swap_coords(table, width, k, k + 1)
    return table & full_mask(width - 1)


def insert_coord(table: int, width: int, coord: int) -> int:
    """Insert a fresh don't-care coordinate at `coord`; result has width+1."""
    table = table | (table << (1 << width))
    for k in range(width, coord, -1):
        table = swap_coords(table, width + 1, k, k - 1)
    return table


def permute_coords(table: int, width: int, dest: tuple[int, ...]) -> int:
    """Relocate coordinates: bit `c` of each model moves to bit `dest[c]`."""
    pos = list(range(width))  # pos[c] = current coordinate of original bit c
    for c in range(width):
        cur, want = pos[c], dest[c]
        if cur != want:
            table = swap_coords(table, width, cur, want)
            # the bit that lived at `want` is now at `cur`
            for k in range(width):
                if pos[k] == want:
                    pos[k] = cur
                    break
            pos[c] = want
    return table


def iff_conj_mask(width: int, target: int, sources: tuple[int, ...]) -> int:
    """Table of models where bit(target) equals the AND of bits(sources).

    Empty sources means bit(target) must be 1.
    """
    full = full_mask(width)
    conj = full
    for s in sources:
        conj &= var_mask(width, s)
    tmask = var_mask(width, target)
    return (tmask & conj) | ((full ^ tmask) & (full ^ conj))


def closure(table: int) -> int:
    """Least superset closed under pairwise AND of model values."""
    if table == 0:
        return 0
    members = set(indices(table))
    work = list(members)
    while work:
        a = work.pop()
        for b in list(members):
            c = a & b
            if c not in members:
                members.add(c)
                work.append(c)
    out = 0
    for v in members:
        out |= 1 << v
    return out


def closure_update(closed: int, extra: int) -> int:
    """Closure of closed|extra, assuming `closed` is already closed.

    Saturation seeds the worklist with the genuinely new members only,
    so growing an already-closed set by a few models is cheap.
    """
    if closed == 0:
        return closure(extra)
    fresh = extra & ~closed
    if fresh == 0:
        return closed
    members = set(indices(closed))
    work = indices(fresh)
    members.update(work)
    while work:
        a = work.pop()
        for b in list(members):
            c = a & b
            if c not in members:
                members.add(c)
                work.append(c)
    out = 0
    for v in members:
        out |= 1 << v
    return out


def is_closed(table: int) -> bool:
    """True iff the model set is closed under pairwise AND."""
    return closure_witness(table) is None


def closure_witness(table: int) -> tuple[int, int] | None:
    """First pair of members (by value) whose AND is missing, else None."""
    members = indices(table)
    mset = set(members)
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if a & b not in mset:
                return (a, b)
    return None


def common_ones(table: int, width: int) -> int:
    """Bitwise AND over all member values; the empty table gives all ones."""
    acc = (1 << width) - 1
    while table and acc:
        low = table & -table
        acc &= low.bit_length() - 1
        table ^= low
    return acc
