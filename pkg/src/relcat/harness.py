"""Randomized and exhaustive checking infrastructure: seeded instance
generators, check specifications, and replayable reports.

Seed derivation: the i-th sample of a run with master seed s uses
``splitmix64(s ^ splitmix64(i))`` as its own seed.  The mix is fixed so a
report's (seed, sample index) pair replays to the identical instance no
matter how samples are scheduled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .chains import closure
from .errors import InputError
from .relcore import Relation, delta, dual, make_relation, parse_relation
from .setmaps import FiniteMap, parse_map
from .ualg import FiniteAlgebra, make_algebra, parse_algebra

GEN_MAX_CARRIER = 64
DEFAULT_DENSITY = 0.25

_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & _M64


def sample_seed(master: int, index: int) -> int:
    """Per-sample seed: splitmix64(master ^ splitmix64(index))."""
    return _splitmix64((master & _M64) ^ _splitmix64(index & _M64))


def _random_bits_relation(rng: random.Random, n: int, density: float) -> Relation:
    pairs = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < density:
                pairs.append((i, j))
    return make_relation(n, pairs)


def gen_random(kind: str, params: dict, seed: int):
    """Deterministic random instance of the requested kind.

    Relations start from independent off-diagonal bits at the given density
    and are then normalized per kind (union with Δ, symmetrization,
    closure).  Surjections are random value tables with a patch pass that
    plants every codomain element.  Algebras have random tables over the
    given signature.
    """
    rng = random.Random(seed)
    n = params.get("n", 0)
    if not (0 <= n <= GEN_MAX_CARRIER):
        raise InputError(f"random generation needs 0 <= n <= {GEN_MAX_CARRIER}")
    density = params.get("density", DEFAULT_DENSITY)
    if kind == "relation":
        return _random_bits_relation(rng, n, density)
    if kind == "reflexive":
        return _random_bits_relation(rng, n, density) | delta(n)
    if kind == "rsym":
        raw = _random_bits_relation(rng, n, density)
        return raw | dual(raw) | delta(n)
    if kind == "preorder":
        return closure("preorder", _random_bits_relation(rng, n, density))
    if kind == "equivalence":
        return closure("equivalence", _random_bits_relation(rng, n, density))
    if kind == "surjection":
        m = params.get("m", 0)
        if not (0 <= m <= n):
            raise InputError("surjection needs 0 <= m <= n")
        values = [rng.randrange(m) for _ in range(n)] if m else []
        if m:
            positions = rng.sample(range(n), m)
            planted = list(range(m))
            rng.shuffle(planted)
            for p, v in zip(positions, planted):
                values[p] = v
        return FiniteMap(n, m, values)
    if kind == "algebra":
        signature = params.get("signature", (("f", 2),))
        ops = []
        for name, arity in signature:
            size = n**arity
            ops.append((name, arity, [rng.randrange(n) for _ in range(size)]))
        return make_algebra(n, ops)
    raise InputError(f"unknown random kind: {kind!r}")


# -- specs and reports ---------------------------------------------------------


@dataclass(frozen=True)
class CheckSpec:
    theorem_id: str
    samples: int = 0  # 0: checker default
    size: int = 0  # 0: checker default (max carrier)
    seed: int = 0
    exhaustive: bool | None = None  # None: checker default


def serialize_value(value) -> str:
    from .relcore import format_relation
    from .setmaps import format_map
    from .ualg import format_algebra

    if isinstance(value, Relation):
        return format_relation(value)
    if isinstance(value, FiniteMap):
        return format_map(value)
    if isinstance(value, FiniteAlgebra):
        return format_algebra(value)
    if isinstance(value, (int, bool)):
        return f"int {int(value)}"
    raise InputError(f"cannot serialize witness part of type {type(value)!r}")


def deserialize_value(text: str):
    head = text.split(None, 1)[0]
    if head == "rel":
        return parse_relation(text)
    if head == "map":
        return parse_map(text)
    if head == "alg":
        return parse_algebra(text)
    if head == "int":
        return int(text.split()[1])
    raise InputError(f"cannot deserialize witness part: {text[:20]!r}")


def serialize_instance(instance: dict) -> dict[str, str]:
    return {k: serialize_value(v) for k, v in instance.items()}


def deserialize_instance(witness: dict[str, str]) -> dict:
    return {k: deserialize_value(v) for k, v in witness.items()}


@dataclass
class CheckReport:
    theorem_id: str
    mode: str
    verdict: str  # pass | counterexample | inconclusive
    instances: int
    qualifying: int
    seed: int
    params: dict = field(default_factory=dict)
    witness: dict[str, str] | None = None
    note: str = ""

    def replay(self) -> bool:
        """Re-run the witness through the checker; True iff the recorded
        violation reproduces bit-exactly."""
        from .checkers import CATALOG

        if self.witness is None:
            raise InputError("report has no witness to replay")
        checker = CATALOG[self.theorem_id]
        qualifies, ok = checker.evaluate(deserialize_instance(self.witness))
        return qualifies and not ok

    def render(self) -> str:
        lines = [
            f"theorem: {self.theorem_id}",
            f"mode: {self.mode}",
            f"verdict: {self.verdict}",
            f"instances: {self.instances}",
            f"qualifying: {self.qualifying}",
            f"seed: {self.seed}",
        ]
        if self.params:
            parts = " ".join(f"{k}={self.params[k]}" for k in sorted(self.params))
            lines.append(f"params: {parts}")
        if self.note:
            lines.append(f"note: {self.note}")
        out = "\n".join(lines) + "\n"
        if self.witness is not None:
            for key in sorted(self.witness):
                text = self.witness[key]
                if text.startswith("int "):
                    out += f"witness {key}: {text.split()[1]}\n"
                else:
                    out += f"witness {key}:\n{text}"
        return out


def run_check(spec: CheckSpec) -> CheckReport:
    from .checkers import CATALOG

    checker = CATALOG.get(spec.theorem_id)
    if checker is None:
        raise InputError(f"unknown theorem id: {spec.theorem_id!r}")
    return checker.run(spec)


def find_counterexample(theorem_id: str, budget: int = 0) -> CheckReport:
    from .checkers import CATALOG

    checker = CATALOG.get(theorem_id)
    if checker is None:
        raise InputError(f"unknown theorem id: {theorem_id!r}")
    if checker.mode not in ("falsify", "explore"):
        raise InputError(f"{theorem_id} has no registered falsifiable form")
    spec = CheckSpec(theorem_id=theorem_id, samples=budget)
    return checker.run(spec)


Evaluator = Callable[[dict], tuple[bool, bool]]
