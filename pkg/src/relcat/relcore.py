"""Binary relations on finite carriers {0, .., n-1}.

A relation is a dense boolean matrix packed into one int per row: bit j of
``rows[i]`` is set iff i is related to j.  Everything downstream (composition,
closures, chain computations) reduces to OR/AND/shift on these ints.

Composition convention, fixed once here and used by every other module:
``compose(S, R)`` relates (x, z) iff there is a y with (x, y) in R and
(y, z) in S.  In word notation SR means compose(S, R), so the rightmost
factor of a word acts first.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import ENUM_BOUND, CapacityError, InputError, check_carrier_size


class Flags(NamedTuple):
    reflexive: bool
    symmetric: bool
    transitive: bool
    preorder: bool
    equivalence: bool


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Relation:
    """Immutable endorelation on a carrier of size n."""

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: tuple[int, ...]):
        self.n = n
        self.rows = rows
        self._hash = hash((n, rows))

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> "Relation":
        check_carrier_size(n)
        rows = [0] * n
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"pair ({i}, {j}) out of range for carrier {n}")
            rows[i] |= 1 << j
        return Relation(n, tuple(rows))

    # -- basic queries -----------------------------------------------------

    def has(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """All related pairs in lexicographic order."""
        out = []
        for i, row in enumerate(self.rows):
            out.extend((i, j) for j in _iter_bits(row))
        return out

    def count(self) -> int:
        return sum(row.bit_count() for row in self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Relation)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        reflexive = all(row >> i & 1 for i, row in enumerate(self.rows))
        extra = [p for p in self.pairs() if p[0] != p[1]]
        if reflexive and not extra:
            return f"Relation(Δ on {self.n})"
        return f"Relation({self.n}, {extra}{' +Δ' if reflexive else ''})"

    # -- lattice of subrelations -------------------------------------------

    def _check_same_carrier(self, other: "Relation") -> None:
        if self.n != other.n:
            raise InputError(f"carrier mismatch: {self.n} vs {other.n}")

    def __or__(self, other: "Relation") -> "Relation":
        self._check_same_carrier(other)
        return Relation(self.n, tuple(a | b for a, b in zip(self.rows, other.rows)))

    def __and__(self, other: "Relation") -> "Relation":
        self._check_same_carrier(other)
        return Relation(self.n, tuple(a & b for a, b in zip(self.rows, other.rows)))

    def __le__(self, other: "Relation") -> bool:
        self._check_same_carrier(other)
        return all(a | b == b for a, b in zip(self.rows, other.rows))

    # -- canonical key -----------------------------------------------------

    def key(self) -> tuple[int, ...]:
        """Row-major bit-string key: lexicographic order on this tuple equals
        lexicographic order on the matrix read row by row, column by column."""
        n = self.n
        return tuple(
            sum(1 << (n - 1 - j) for j in _iter_bits(row)) for row in self.rows
        )


# -- constructors ------------------------------------------------------------


def make_relation(n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
    return Relation.from_pairs(n, pairs)


def delta(n: int) -> Relation:
    check_carrier_size(n)
    return Relation(n, tuple(1 << i for i in range(n)))


def nabla(n: int) -> Relation:
    check_carrier_size(n)
    full = (1 << n) - 1
    return Relation(n, tuple(full for _ in range(n)))


def const_relation(kind: str, n: int) -> Relation:
    if kind == "delta":
        return delta(n)
    if kind == "nabla":
        return nabla(n)
    raise InputError(f"unknown constant relation kind: {kind!r}")


# -- algebra -----------------------------------------------------------------


def compose(s: Relation, r: Relation) -> Relation:
    """compose(S, R) = S∘R: (x, z) iff ∃y. (x,y) ∈ R and (y,z) ∈ S.

    Kernel: the result row at x is the OR of the rows of S selected by the
    set bits of R's row at x.
    """
    if s.n != r.n:
        raise InputError(f"carrier mismatch: {s.n} vs {r.n}")
    srows = s.rows
    out = []
    for mask in r.rows:
        acc = 0
        while mask:
            low = mask & -mask
            acc |= srows[low.bit_length() - 1]
            mask ^= low
        out.append(acc)
    return Relation(r.n, tuple(out))


def dual(r: Relation) -> Relation:
    """Transpose: (i, j) related in dual(R) iff (j, i) related in R."""
    rows = [0] * r.n
    for i, row in enumerate(r.rows):
        bit = 1 << i
        for j in _iter_bits(row):
            rows[j] |= bit
    return Relation(r.n, tuple(rows))


def power(r: Relation, k: int) -> Relation:
    """k-fold composition; power(R, 0) = Δ."""
    if k < 0:
        raise InputError(f"power exponent must be nonnegative, got {k}")
    acc = delta(r.n)
    for _ in range(k):
        acc = compose(acc, r)
    return acc


def lattice(op: str, a: Relation, b: Relation):
    if op == "union":
        return a | b
    if op == "intersect":
        return a & b
    if op == "leq":
        return a <= b
    if op == "equal":
        a._check_same_carrier(b)
        return a == b
    raise InputError(f"unknown lattice op: {op!r}")


def classify(r: Relation) -> Flags:
    """Flags computed by the three inclusion tests Δ ⊆ R, R^op ⊆ R, R² ⊆ R."""
    reflexive = delta(r.n) <= r
    symmetric = dual(r) <= r
    transitive = compose(r, r) <= r
    preorder = reflexive and transitive
    return Flags(reflexive, symmetric, transitive, preorder, preorder and symmetric)


# -- exhaustive enumeration --------------------------------------------------


def _iter_reflexive(n: int) -> Iterator[Relation]:
    # Off-diagonal positions in row-major order; counting with the first
    # position as the most significant bit yields lexicographic order on the
    # row-major bit string.
    positions = [(i, j) for i in range(n) for j in range(n) if i != j]
    k = len(positions)
    diag = tuple(1 << i for i in range(n))
    for code in range(1 << k):
        rows = list(diag)
        for idx, (i, j) in enumerate(positions):
            if code >> (k - 1 - idx) & 1:
                rows[i] |= 1 << j
        yield Relation(n, tuple(rows))


def _iter_partitions(n: int) -> Iterator[list[list[int]]]:
    # Restricted-growth generation of set partitions.
    if n == 0:
        yield []
        return

    def rec(i: int, blocks: list[list[int]]):
        if i == n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


def _partition_relation(n: int, blocks: list[list[int]]) -> Relation:
    rows = [0] * n
    for block in blocks:
        mask = 0
        for x in block:
            mask |= 1 << x
        for x in block:
            rows[x] = mask
    return Relation(n, tuple(rows))


@lru_cache(maxsize=None)
def _posets(k: int) -> tuple[tuple[int, ...], ...]:
    # All partial orders on k labelled points, as row tuples.  Each unordered
    # pair {i, j} is unrelated, i<j, or j<i; transitivity filters the rest.
    if k == 0:
        return ((),)
    pairs = list(itertools.combinations(range(k), 2))
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rows = [1 << i for i in range(k)]
        for (i, j), c in zip(pairs, choice):
            if c == 1:
                rows[i] |= 1 << j
            elif c == 2:
                rows[j] |= 1 << i
        ok = True
        for i in range(k):
            reach = 0
            mask = rows[i]
            while mask:
                low = mask & -mask
                reach |= rows[low.bit_length() - 1]
                mask ^= low
            if reach | rows[i] != rows[i]:
                ok = False
                break
        if ok:
            out.append(tuple(rows))
    return tuple(out)


def _iter_preorders(n: int) -> Iterator[Relation]:
    # A preorder is a partition into clusters plus a partial order on the
    # clusters; inflate each poset along each partition.
    for blocks in _iter_partitions(n):
        k = len(blocks)
        masks = []
        for block in blocks:
            m = 0
            for x in block:
                m |= 1 << x
            masks.append(m)
        for poset in _posets(k):
            rows = [0] * n
            for bi, block in enumerate(blocks):
                row = 0
                for bj in _iter_bits(poset[bi]):
                    row |= masks[bj]
                for x in block:
                    rows[x] = row
            yield Relation(n, tuple(rows))


def enumerate_relations(kind: str, n: int, bound: int | None = None) -> list[Relation]:
    """All relations on n elements with the given property, duplicate-free,
    sorted by the row-major bit-string key."""
    cap = ENUM_BOUND if bound is None else bound
    if n > cap:
        raise CapacityError(f"enumeration carrier {n} exceeds bound {cap}")
    check_carrier_size(n)
    if kind == "reflexive":
        return list(_iter_reflexive(n))  # generated in lex order already
    if kind == "equivalence":
        rels = [_partition_relation(n, blocks) for blocks in _iter_partitions(n)]
    elif kind == "preorder":
        rels = list(_iter_preorders(n))
    else:
        raise InputError(f"unknown enumeration kind: {kind!r}")
    rels.sort(key=Relation.key)
    return rels


# -- text format -------------------------------------------------------------


def format_relation(r: Relation) -> str:
    """Canonical block: header line then lexicographically sorted pairs."""
    lines = [f"rel {r.n}"]
    lines.extend(f"{i} {j}" for i, j in r.pairs())
    return "\n".join(lines) + "\n"


def parse_relation(text: str) -> Relation:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InputError("empty relation file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "rel":
        raise InputError(f"bad relation header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise InputError(f"bad relation size: {head[1]!r}")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InputError(f"bad relation pair line: {ln!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"bad relation pair line: {ln!r}")
    return make_relation(n, pairs)
