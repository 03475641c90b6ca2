"""Maps between finite carriers and the relation transport they induce:
kernel pairs, direct and inverse images, the square construction, and the
pairs-as-carrier view of a relation."""

from __future__ import annotations

from typing import Iterable

from .errors import InputError, check_carrier_size
from .relcore import Relation, _iter_bits, make_relation


class FiniteMap:
    """A function {0..n-1} -> {0..m-1} given by its value table."""

    __slots__ = ("n", "m", "values")

    def __init__(self, n: int, m: int, values: Iterable[int]):
        check_carrier_size(n)
        check_carrier_size(m)
        vals = tuple(values)
        if len(vals) != n:
            raise InputError(f"map needs {n} values, got {len(vals)}")
        for v in vals:
            if not (0 <= v < m):
                raise InputError(f"map value {v} out of range for codomain {m}")
        self.n = n
        self.m = m
        self.values = vals

    @staticmethod
    def identity(n: int) -> "FiniteMap":
        return FiniteMap(n, n, range(n))

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteMap)
            and (self.n, self.m, self.values) == (other.n, other.m, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.values))

    def __repr__(self) -> str:
        return f"FiniteMap({self.n}->{self.m}, {list(self.values)})"

    @property
    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.m

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == self.n


def section(f: FiniteMap) -> FiniteMap:
    """Canonical right inverse of a surjection: each codomain element is sent
    to its least preimage."""
    if not f.is_surjective:
        raise InputError("section requires a surjective map")
    least = [-1] * f.m
    for i in range(f.n - 1, -1, -1):
        least[f.values[i]] = i
    return FiniteMap(f.m, f.n, least)


def kernel_pair(f: FiniteMap) -> Relation:
    """R[f]: (x, x') related iff f(x) = f(x'); always an equivalence."""
    fibers = [0] * f.m
    for i, v in enumerate(f.values):
        fibers[v] |= 1 << i
    return Relation(f.n, tuple(fibers[v] for v in f.values))


def direct_image(f: FiniteMap, r: Relation) -> Relation:
    """f(R) = {(f(x), f(x')) : (x, x') in R} on the codomain."""
    if r.n != f.n:
        raise InputError(f"relation carrier {r.n} does not match domain {f.n}")
    rows = [0] * f.m
    for i, row in enumerate(r.rows):
        fi = f.values[i]
        for j in _iter_bits(row):
            rows[fi] |= 1 << f.values[j]
    return Relation(f.m, tuple(rows))


def inverse_image(f: FiniteMap, s: Relation) -> Relation:
    """f^{-1}(S) = {(x, x') : (f(x), f(x')) in S} on the domain."""
    if s.n != f.m:
        raise InputError(f"relation carrier {s.n} does not match codomain {f.m}")
    # pull each codomain row back to a domain mask, then select per point
    pre = [0] * f.m
    for i, v in enumerate(f.values):
        pre[v] |= 1 << i
    pulled = []
    for y in range(f.m):
        mask = 0
        for z in _iter_bits(s.rows[y]):
            mask |= pre[z]
        pulled.append(mask)
    return Relation(f.n, tuple(pulled[f.values[x]] for x in range(f.n)))


def square(r: Relation, s: Relation) -> frozenset[tuple[int, int, int, int]]:
    """All quadruples (u, v, u', v') with u R u', v R v', u S v, u' S v'."""
    if r.n != s.n:
        raise InputError(f"carrier mismatch: {r.n} vs {s.n}")
    out = []
    for u in range(r.n):
        for up in _iter_bits(r.rows[u]):
            for v in _iter_bits(s.rows[u]):
                for vp in _iter_bits(r.rows[v]):
                    if s.rows[up] >> vp & 1:
                        out.append((u, v, up, vp))
    return frozenset(out)


def pair_carrier(r: Relation) -> tuple[FiniteMap, FiniteMap]:
    """View R's pair set as a carrier of its own: index the pairs in
    lexicographic order and return the two projections d0, d1 back to X."""
    pairs = r.pairs()
    d0 = FiniteMap(len(pairs), r.n, (p[0] for p in pairs))
    d1 = FiniteMap(len(pairs), r.n, (p[1] for p in pairs))
    return d0, d1


# -- text format -------------------------------------------------------------


def format_map(f: FiniteMap) -> str:
    head = f"map {f.n} {f.m}"
    if f.n == 0:
        return head + "\n"
    return head + "\n" + " ".join(str(v) for v in f.values) + "\n"


def parse_map(text: str) -> FiniteMap:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InputError("empty map file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "map":
        raise InputError(f"bad map header: {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise InputError(f"bad map header: {lines[0]!r}")
    tokens = " ".join(lines[1:]).split()
    if len(tokens) != n:
        raise InputError(f"map needs {n} values, got {len(tokens)}")
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise InputError("map values must be integers")
    return FiniteMap(n, m, values)
