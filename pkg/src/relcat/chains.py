"""Alternating composition chains of a pair of reflexive relations, their
stationarity, suprema, and the closures they induce.

Term convention: term 0 is Δ, term 1 is R, term 2 is RS = R∘S, term 3 is
RSR, and so on; the recurrence appends R at odd indices and S at even ones.
Read as paths, (x, z) lies in term n iff there is a path of n steps from x
to z whose i-th step is in R when i ≡ n (mod 2) and in S otherwise.  All
other modules go through chain_term so this orientation cannot drift.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .relcore import Relation, classify, compose, delta, dual


def _require_reflexive(r: Relation, name: str) -> None:
    if not delta(r.n) <= r:
        raise InputError(f"{name} must be reflexive")


def _check_pair(r: Relation, s: Relation) -> None:
    if r.n != s.n:
        raise InputError(f"carrier mismatch: {r.n} vs {s.n}")
    _require_reflexive(r, "left relation")
    _require_reflexive(s, "right relation")


def chain_prefix(r: Relation, s: Relation, n: int) -> tuple[Relation, ...]:
    """Terms 0..n of the chain of the pair (R, S), in one pass."""
    if n < 0:
        raise InputError(f"chain index must be nonnegative, got {n}")
    _check_pair(r, s)
    terms = [delta(r.n)]
    for k in range(1, n + 1):
        terms.append(compose(terms[-1], r if k % 2 else s))
    return tuple(terms)


def chain_term(r: Relation, s: Relation, n: int) -> Relation:
    """The n-th term of the chain of the pair (R, S)."""
    return chain_prefix(r, s, n)[n]


def default_cutoff(n: int) -> int:
    # Strict growth can pause on alternate steps, so the worst case is about
    # twice the pair capacity; 3n²+4 is a comfortable ceiling.
    return 3 * n * n + 4


@dataclass(frozen=True)
class ChainTrace:
    """The computed chain terms of a pair, up to stationarity or cutoff.

    stationary_index is the least n from which the chain is constant, or
    None when the cutoff stopped the computation first.  Detection uses
    terms[k] == terms[k-2]: a single repeated term is not enough, since a
    chain such as ((Δ, S)) repeats every term once while still growing.
    """

    left: Relation
    right: Relation
    terms: tuple[Relation, ...]
    stationary_index: int | None

    @property
    def final(self) -> Relation:
        return self.terms[-1]

    def report(self, blocks: bool = False) -> str:
        from .relcore import format_relation

        lines = [f"{k}: {t.count()}" for k, t in enumerate(self.terms)]
        if self.stationary_index is None:
            lines.append(f"truncated: {len(self.terms) - 1}")
        else:
            lines.append(f"stationary: {self.stationary_index}")
        text = "\n".join(lines) + "\n"
        if blocks:
            for k, t in enumerate(self.terms):
                text += f"term {k}:\n" + format_relation(t)
        return text


def chain_trace(r: Relation, s: Relation, cutoff: int | None = None) -> ChainTrace:
    _check_pair(r, s)
    limit = default_cutoff(r.n) if cutoff is None else cutoff
    if limit < 1:
        raise InputError(f"cutoff must be positive, got {limit}")
    terms = [delta(r.n)]
    stationary: int | None = None
    for k in range(1, limit + 1):
        terms.append(compose(terms[-1], r if k % 2 else s))
        if k >= 2 and terms[k] == terms[k - 2]:
            final = terms[k]
            stationary = next(i for i, t in enumerate(terms) if t == final)
            break
    return ChainTrace(r, s, tuple(terms), stationary)


def supremum_sigma(r: Relation, s: Relation) -> Relation:
    """The supremum of the chain of (R, S): its stabilized term.  Always a
    preorder; an equivalence when both inputs are symmetric."""
    trace = chain_trace(r, s)
    if trace.stationary_index is None:
        raise InputError("chain did not stabilize within the default cutoff")
    return trace.final


def closure(kind: str, t: Relation) -> Relation:
    """Smallest preorder / equivalence containing T.  Non-reflexive input is
    first unioned with Δ."""
    t = t | delta(t.n)
    if kind == "preorder":
        return supremum_sigma(t, t)
    if kind == "equivalence":
        return supremum_sigma(t, dual(t))
    raise InputError(f"unknown closure kind: {kind!r}")


def is_preorder(r: Relation) -> bool:
    return classify(r).preorder
