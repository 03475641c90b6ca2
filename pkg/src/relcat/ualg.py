"""Finite algebras as operation tables, their congruences, congruence
lattices, modularity, the Shifting Principle, and the chain form of the
join-meet distribution identity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .chains import chain_trace, closure, supremum_sigma
from .errors import CapacityError, InputError, check_carrier_size
from .relcore import (
    Relation,
    _iter_bits,
    classify,
    delta,
    dual,
    enumerate_relations,
    make_relation,
    nabla,
)

LATTICE_BOUND = 6


class Operation(NamedTuple):
    name: str
    arity: int
    table: tuple[int, ...]  # flat, row-major over argument tuples


class FiniteAlgebra:
    __slots__ = ("n", "operations")

    def __init__(self, n: int, operations: Sequence[Operation]):
        self.n = n
        self.operations = tuple(operations)

    def __repr__(self) -> str:
        ops = ", ".join(f"{op.name}/{op.arity}" for op in self.operations)
        return f"FiniteAlgebra({self.n}; {ops or 'no ops'})"

    def apply(self, op: Operation, args: Sequence[int]) -> int:
        idx = 0
        for a in args:
            idx = idx * self.n + a
        return op.table[idx]


def make_algebra(n: int, ops: Iterable[tuple[str, int, Sequence[int]]]) -> FiniteAlgebra:
    check_carrier_size(n)
    built = []
    for name, arity, table in ops:
        if arity < 0:
            raise InputError(f"operation {name!r} has negative arity")
        expected = n**arity
        table = tuple(table)
        if len(table) != expected:
            raise InputError(
                f"operation {name!r}: table has {len(table)} entries, needs {expected}"
            )
        for v in table:
            if not (0 <= v < n):
                raise InputError(f"operation {name!r}: entry {v} out of range")
        built.append(Operation(name, arity, table))
    return FiniteAlgebra(n, built)


# -- compatibility -------------------------------------------------------------


def is_compatible(alg: FiniteAlgebra, r: Relation) -> bool:
    """Whether every operation maps componentwise-related argument tuples to
    related results."""
    if r.n != alg.n:
        raise InputError("relation carrier does not match the algebra")
    pairs = r.pairs()
    for op in alg.operations:
        if op.arity == 0:
            c = op.table[0]
            if not r.has(c, c):
                return False
            continue
        for combo in itertools.product(pairs, repeat=op.arity):
            x = alg.apply(op, [p[0] for p in combo])
            y = alg.apply(op, [p[1] for p in combo])
            if not r.has(x, y):
                return False
    return True


def _operation_step(alg: FiniteAlgebra, r: Relation) -> Relation:
    """One round of operation images of componentwise-related tuples."""
    rows = [0] * alg.n
    pairs = r.pairs()
    for op in alg.operations:
        if op.arity == 0:
            c = op.table[0]
            rows[c] |= 1 << c
            continue
        for combo in itertools.product(pairs, repeat=op.arity):
            x = alg.apply(op, [p[0] for p in combo])
            y = alg.apply(op, [p[1] for p in combo])
            rows[x] |= 1 << y
    return Relation(alg.n, tuple(rows))


@dataclass(frozen=True)
class Congruence:
    relation: Relation
    compatible: bool

    def __post_init__(self):
        if not classify(self.relation).equivalence:
            raise InputError("a congruence must be an equivalence relation")


def congruence_generated(alg: FiniteAlgebra, t: Relation) -> Congruence:
    """Least congruence containing T: alternate equivalence closure with
    one-step operation closure until the relation stops growing."""
    if t.n != alg.n:
        raise InputError("relation carrier does not match the algebra")
    cur = closure("equivalence", t)
    while True:
        step = _operation_step(alg, cur)
        if step <= cur:
            return Congruence(cur, True)
        cur = closure("equivalence", cur | step)


def congruence_join(alg: FiniteAlgebra, a: Congruence, b: Congruence) -> Congruence:
    """Supremum via the alternating chain; chain terms of compatible
    reflexive relations stay compatible, so no re-closure is needed."""
    return Congruence(supremum_sigma(a.relation, b.relation), True)


@dataclass(frozen=True)
class CongruenceLattice:
    algebra: FiniteAlgebra
    congruences: tuple[Congruence, ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]

    def index_of(self, r: Relation) -> int:
        for i, c in enumerate(self.congruences):
            if c.relation == r:
                return i
        raise InputError("relation is not a congruence of this algebra")


def congruence_lattice(alg: FiniteAlgebra, bound: int = LATTICE_BOUND) -> CongruenceLattice:
    if alg.n > bound:
        raise CapacityError(
            f"congruence lattice needs carrier <= {bound}, got {alg.n}"
        )
    rels = [
        r
        for r in enumerate_relations("equivalence", alg.n, bound=bound)
        if is_compatible(alg, r)
    ]
    congs = tuple(Congruence(r, True) for r in rels)
    index = {c.relation: i for i, c in enumerate(congs)}
    size = len(congs)
    meet = [[0] * size for _ in range(size)]
    join = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            m = congs[i].relation & congs[j].relation
            jn = supremum_sigma(congs[i].relation, congs[j].relation)
            meet[i][j] = meet[j][i] = index[m]
            join[i][j] = join[j][i] = index[jn]
    return CongruenceLattice(
        alg, congs, tuple(map(tuple, meet)), tuple(map(tuple, join))
    )


# -- modularity and the Shifting Principle ------------------------------------


@dataclass(frozen=True)
class ModularityResult:
    modular: bool
    witness: tuple[Relation, Relation, Relation] | None  # (R, S, T) with R ⊆ T


def modularity_check(alg: FiniteAlgebra) -> ModularityResult:
    """Scan congruence triples (R, S, T) with R ⊆ T for a violation of
    (R ∨ S) ∧ T = R ∨ (S ∧ T); first violation in enumeration order wins."""
    lat = congruence_lattice(alg)
    congs = lat.congruences
    size = len(congs)
    for ri in range(size):
        for ti in range(size):
            if lat.meet[ri][ti] != ri:  # R ⊆ T iff R ∧ T = R
                continue
            for si in range(size):
                left = lat.meet[lat.join[ri][si]][ti]
                right = lat.join[ri][lat.meet[si][ti]]
                if left != right:
                    return ModularityResult(
                        False,
                        (congs[ri].relation, congs[si].relation, congs[ti].relation),
                    )
    return ModularityResult(True, None)


@dataclass(frozen=True)
class ShiftingResult:
    holds: bool
    witness: tuple[int, int, int, int] | None  # (x, x', t, t')


def shifting_principle_check(
    alg: FiniteAlgebra, t: Relation, s: Relation, r: Relation
) -> ShiftingResult:
    """Check the quadruple condition: congruences T ⊆ R, compatible
    reflexive symmetric S with S ∧ R ⊆ T; whenever x S t, x' S t', x R x'
    and t T t', conclude x T x'."""
    for rel, name in ((t, "T"), (r, "R")):
        if rel.n != alg.n:
            raise InputError(f"{name} does not live on the algebra's carrier")
        if not classify(rel).equivalence or not is_compatible(alg, rel):
            raise InputError(f"{name} must be a congruence of the algebra")
    flags = classify(s)
    if s.n != alg.n or not flags.reflexive or not flags.symmetric:
        raise InputError("S must be reflexive and symmetric on the carrier")
    if not is_compatible(alg, s):
        raise InputError("S must be compatible with the operations")
    if not t <= r:
        raise InputError("hypothesis failure: T is not inside R")
    if not (s & r) <= t:
        raise InputError("hypothesis failure: S ∧ R is not inside T")
    for x in range(alg.n):
        for xp in _iter_bits(r.rows[x]):
            for tt in _iter_bits(s.rows[x]):
                for tp in _iter_bits(s.rows[xp]):
                    if t.has(tt, tp) and not t.has(x, xp):
                        return ShiftingResult(False, (x, xp, tt, tp))
    return ShiftingResult(True, None)


def symmetric_compatible_relations(alg: FiniteAlgebra) -> list[Relation]:
    """All reflexive symmetric compatible relations on the algebra, sorted by
    the canonical key.  For an algebra with no operations this is every
    reflexive symmetric relation; otherwise the closure system is generated
    from principal closures."""
    n = alg.n
    if not alg.operations:
        if n * (n - 1) // 2 > 15:
            raise CapacityError(f"too many symmetric relations on carrier {n}")
        positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
        out = []
        for code in range(1 << len(positions)):
            rows = [1 << i for i in range(n)]
            for idx, (i, j) in enumerate(positions):
                if code >> idx & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            out.append(Relation(n, tuple(rows)))
        out.sort(key=Relation.key)
        return out

    def close(rel: Relation) -> Relation:
        cur = rel | delta(n) | dual(rel)
        while True:
            step = _operation_step(alg, cur)
            grown = cur | step | dual(step)
            if grown == cur:
                return cur
            cur = grown

    found = {close(delta(n))}
    principals = [
        close(make_relation(n, [(i, j)]))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    work = [p for p in principals if p not in found]
    found.update(work)
    while work:
        item = work.pop()
        for other in list(found):
            joined = close(item | other)
            if joined not in found:
                found.add(joined)
                work.append(joined)
    return sorted(found, key=Relation.key)


@dataclass(frozen=True)
class ShiftingScanResult:
    holds: bool
    witness: tuple[Relation, Relation, Relation, tuple[int, int, int, int]] | None
    triples: int


def shifting_scan(alg: FiniteAlgebra) -> ShiftingScanResult:
    """Run the Shifting Principle over every admissible triple (T, S, R):
    congruences T ⊆ R, compatible reflexive symmetric S with S ∧ R ⊆ T."""
    lat = congruence_lattice(alg)
    srels = symmetric_compatible_relations(alg)
    tried = 0
    for tc in lat.congruences:
        for rc in lat.congruences:
            if not tc.relation <= rc.relation:
                continue
            for s in srels:
                if not (s & rc.relation) <= tc.relation:
                    continue
                tried += 1
                res = shifting_principle_check(alg, tc.relation, s, rc.relation)
                if not res.holds:
                    return ShiftingScanResult(
                        False, (tc.relation, s, rc.relation, res.witness), tried
                    )
    return ShiftingScanResult(True, None, tried)


def day_formula_check(
    alg: FiniteAlgebra, t: Congruence, s: Congruence, r: Congruence
) -> bool:
    """(T ∨ S) ∧ R against the running union of (chain term ∧ R); both sides
    must agree whenever chain suprema distribute over intersection, which
    they do on finite carriers, so false signals a defect."""
    for c in (t, s, r):
        if c.relation.n != alg.n or not is_compatible(alg, c.relation):
            raise InputError("day formula needs congruences of the algebra")
    left = congruence_join(alg, t, s).relation & r.relation
    trace = chain_trace(t.relation, s.relation)
    right = trace.terms[0] & r.relation
    for term in trace.terms[1:]:
        right = right | (term & r.relation)
    return left == right


# -- bundled corpus ------------------------------------------------------------


def cyclic_group_table(n: int) -> tuple[int, ...]:
    return tuple((i + j) % n for i in range(n) for j in range(n))


def _s3_table() -> tuple[int, ...]:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    flat = []
    for p in perms:
        for q in perms:
            flat.append(index[tuple(p[q[x]] for x in range(3))])
    return tuple(flat)


def corpus() -> dict[str, FiniteAlgebra]:
    """Bundled algebras spanning modular (groups) and non-modular (bare set)
    congruence behaviour."""
    meet2 = tuple(min(i, j) for i in range(2) for j in range(2))
    meet3 = tuple(min(i, j) for i in range(3) for j in range(3))
    return {
        "z2": make_algebra(2, [("add", 2, cyclic_group_table(2))]),
        "z4": make_algebra(4, [("add", 2, cyclic_group_table(4))]),
        "z2xz2": make_algebra(4, [("add", 2, tuple(i ^ j for i in range(4) for j in range(4)))]),
        "z6": make_algebra(6, [("add", 2, cyclic_group_table(6))]),
        "s3": make_algebra(6, [("mul", 2, _s3_table())]),
        "semilattice2": make_algebra(2, [("meet", 2, meet2)]),
        "semilattice3": make_algebra(3, [("meet", 2, meet3)]),
        "bare3": make_algebra(3, []),
        "bare4": make_algebra(4, []),
        "bare5": make_algebra(5, []),
    }


# -- text format ---------------------------------------------------------------


def format_algebra(alg: FiniteAlgebra) -> str:
    lines = [f"alg {alg.n}"]
    for op in alg.operations:
        lines.append(f"op {op.name} {op.arity}")
        width = alg.n if op.arity >= 1 else 1
        for start in range(0, len(op.table), max(width, 1)):
            lines.append(" ".join(str(v) for v in op.table[start : start + width]))
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> FiniteAlgebra:
    lines = [
        ln.strip()
        for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if not lines:
        raise InputError("empty algebra file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "alg":
        raise InputError(f"bad algebra header: {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise InputError(f"bad algebra size: {head[1]!r}")
    ops: list[tuple[str, int, list[int]]] = []
    tokens: list[str] = []
    pending: tuple[str, int] | None = None

    def flush():
        if pending is None:
            if tokens:
                raise InputError("table data before any 'op' line")
            return
        try:
            table = [int(tk) for tk in tokens]
        except ValueError:
            raise InputError(f"operation {pending[0]!r}: non-integer table entry")
        ops.append((pending[0], pending[1], table))

    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "op":
            flush()
            tokens = []
            if len(parts) != 3:
                raise InputError(f"bad op line: {ln!r}")
            try:
                pending = (parts[1], int(parts[2]))
            except ValueError:
                raise InputError(f"bad op arity: {ln!r}")
        else:
            tokens.extend(parts)
    flush()
    return make_algebra(n, ops)


def nabla_congruence(alg: FiniteAlgebra) -> Congruence:
    return Congruence(nabla(alg.n), True)


def delta_congruence(alg: FiniteAlgebra) -> Congruence:
    return Congruence(delta(alg.n), True)
