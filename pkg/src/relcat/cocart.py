"""Joins of preorders and equivalences, and cocartesian images of relations
along surjections.

Joins are always computed through the alternating-chain supremum, never by
closing a union directly; the closure-of-union route lives in the test
oracles so the comparison stays honest.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import supremum_sigma
from .errors import InputError
from .relcore import Relation, classify, compose, delta
from .setmaps import FiniteMap, direct_image, inverse_image, kernel_pair, pair_carrier


def _require_kind(r: Relation, kind: str, name: str) -> None:
    flags = classify(r)
    if kind == "preorder":
        if not flags.preorder:
            raise InputError(f"{name} is not a preorder")
    elif kind == "equivalence":
        if not flags.equivalence:
            raise InputError(f"{name} is not an equivalence")
    else:
        raise InputError(f"unknown kind: {kind!r}")


def join(kind: str, r: Relation, s: Relation) -> Relation:
    """Least preorder (resp. equivalence) containing both inputs."""
    _require_kind(r, kind, "left input")
    _require_kind(s, kind, "right input")
    return supremum_sigma(r, s)


@dataclass(frozen=True)
class CocartesianResult:
    map: FiniteMap
    source: Relation
    image: Relation
    join_over_kernel: Relation
    certified: bool

    def report(self) -> str:
        from .relcore import format_relation

        out = "source:\n" + format_relation(self.source)
        out += "kernel:\n" + format_relation(kernel_pair(self.map))
        out += "join:\n" + format_relation(self.join_over_kernel)
        out += "image:\n" + format_relation(self.image)
        out += f"certified: {'true' if self.certified else 'false'}\n"
        return out


def cocartesian_image(kind: str, f: FiniteMap, t: Relation) -> CocartesianResult:
    """Push the preorder (resp. equivalence) T forward along the surjection f
    to the least preorder (resp. equivalence) S on the codomain with
    T ⊆ f^{-1}(S).  Computed as the direct image of the join of T with the
    kernel equivalence; certified by pulling the image back."""
    if not f.is_surjective:
        raise InputError("cocartesian image requires a surjective map")
    if t.n != f.n:
        raise InputError(f"relation carrier {t.n} does not match domain {f.n}")
    _require_kind(t, kind, "source")
    jk = supremum_sigma(kernel_pair(f), t)
    image = direct_image(f, jk)
    certified = inverse_image(f, image) == jk
    return CocartesianResult(f, t, image, jk, certified)


def is_cocartesian(kind: str, f: FiniteMap, t: Relation, s: Relation) -> bool:
    """Whether (f, T -> S) is the cocartesian map over f, i.e. whether
    f^{-1}(S) equals the join of R[f] with T."""
    if not f.is_surjective:
        raise InputError("cocartesian test requires a surjective map")
    _require_kind(t, kind, "domain relation")
    _require_kind(s, kind, "codomain relation")
    pull = inverse_image(f, s)
    if not t <= pull:
        raise InputError("not a morphism of relations: T is not inside f^{-1}(S)")
    return pull == supremum_sigma(kernel_pair(f), t)


def modular_formula_check(
    f: FiniteMap, s: Relation, t: Relation, strict: bool = True
) -> bool:
    """Evaluate (R[f] ∨ S) ∧ T == R[f] ∨ (S ∧ T) with joins taken among
    preorders.

    Strict mode enforces the hypotheses (f surjective; S, T preorders on the
    domain; R[f] ⊆ T; f(S) a preorder) and the verdict is then guaranteed
    true; hypothesis failures raise InputError, distinct from a false
    verdict.  With strict=False the hypotheses on T and f(S) are skipped and
    the formula is evaluated as-is, for counterexample hunting.
    """
    if not f.is_surjective:
        raise InputError("modular formula check requires a surjective map")
    _require_kind(s, "preorder", "S")
    _require_kind(t, "preorder", "T")
    if s.n != f.n or t.n != f.n:
        raise InputError("S and T must live on the domain of f")
    rf = kernel_pair(f)
    if strict:
        if not rf <= t:
            raise InputError("hypothesis failure: R[f] is not inside T")
        if not classify(direct_image(f, s)).preorder:
            raise InputError("hypothesis failure: f(S) is not a preorder")
    left = supremum_sigma(rf, s) & t
    right = supremum_sigma(rf, s & t)
    return left == right


def join_via_pair_carrier(r: Relation, s: Relation) -> Relation:
    """The join R ∨ S of an equivalence with a preorder, computed through the
    pairs-as-carrier construction: pull S back along the first projection of
    R, then push forward cocartesianly along the second."""
    _require_kind(r, "equivalence", "R")
    _require_kind(s, "preorder", "S")
    d0, d1 = pair_carrier(r)
    pulled = inverse_image(d0, s)
    return cocartesian_image("preorder", d1, pulled).image


def power_stabilization(r: Relation) -> tuple[int, Relation]:
    """Least n with R^{n+1} = R^n, together with R^n.  Requires R reflexive
    (powers of a non-reflexive relation can cycle without stabilizing); the
    stabilized power is then the transitive closure."""
    if not delta(r.n) <= r:
        raise InputError("power stabilization requires a reflexive relation")
    prev = delta(r.n)
    cur = r
    n = 1
    while cur != prev:
        prev = cur
        cur = compose(cur, r)
        n += 1
    return n - 1, prev


__all__ = [
    "CocartesianResult",
    "cocartesian_image",
    "is_cocartesian",
    "join",
    "join_via_pair_carrier",
    "modular_formula_check",
    "power_stabilization",
]
