"""Stationarity of alternating chains, permutability levels of pairs, and
the power-based characterizations of permutable contexts.

Each operation here evaluates a fixed list of instance predicates by direct
chain-term computation.  None of them asserts a property of an ambient
category: a predicate that holds for one relation can fail for the next,
and the harness's universal scans are expected to find such failures in
finite sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chains import chain_term, supremum_sigma
from .errors import InputError
from .relcore import Relation, classify, delta, dual, power


@dataclass(frozen=True)
class StatReport:
    """Evaluation of the numbered stationarity conditions at one instance.

    validated is False when the theorem's hypotheses were relaxed; the
    conditions are then raw booleans and consistent is None.  For the odd
    theorem consistency means all five conditions agree; for the even one it
    means 1-3 agree, 4-5 agree, and 1-3 imply 4-5.
    """

    parity: str
    m: int
    conditions: dict[str, bool]
    consistent: bool | None
    validated: bool

    def report(self) -> str:
        lines = [f"parity: {self.parity}", f"m: {self.m}"]
        lines.extend(
            f"{name}: {'true' if value else 'false'}"
            for name, value in self.conditions.items()
        )
        if self.consistent is None:
            lines.append("consistent: unvalidated")
        else:
            lines.append(f"consistent: {'true' if self.consistent else 'false'}")
        return "\n".join(lines) + "\n"


def _stationary_from(r: Relation, s: Relation, n: int) -> bool:
    # Stationary from n is equivalent to term(n+2) == term(n) for the
    # monotone chains handled here.
    return chain_term(r, s, n + 2) == chain_term(r, s, n)


def stationarity_conditions(
    parity: str, r: Relation, s: Relation, m: int, relax: bool = False
) -> StatReport:
    """Evaluate the five odd-case conditions at 2m+1 (hypothesis: R a
    preorder, S reflexive) or the five even-case conditions at 2m
    (hypothesis: S a preorder, R reflexive)."""
    if m < 1:
        raise InputError(f"m must be positive, got {m}")
    if parity not in ("odd", "even"):
        raise InputError(f"parity must be 'odd' or 'even', got {parity!r}")
    validated = True
    if parity == "odd":
        if not classify(r).preorder:
            if not relax:
                raise InputError("odd case requires R to be a preorder")
            validated = False
    else:
        if not classify(s).preorder:
            if not relax:
                raise InputError("even case requires S to be a preorder")
            validated = False

    if parity == "odd":
        n = 2 * m + 1
        t_n = chain_term(r, s, n)
        conds = {
            "c1_next_equal": chain_term(r, s, n + 1) == t_n,
            "c2_stationary": _stationary_from(r, s, n),
            "c3_preorder": classify(t_n).preorder,
            "c4_swap_next_equal": chain_term(s, r, n + 1) == t_n,
            "c5_mixed_subperm": chain_term(s, r, n) <= t_n,
        }
        consistent = len(set(conds.values())) == 1
    else:
        n = 2 * m
        t_n = chain_term(r, s, n)
        conds = {
            "c1_next_equal": chain_term(r, s, n + 1) == t_n,
            "c2_stationary": _stationary_from(r, s, n),
            "c3_preorder": classify(t_n).preorder,
            "c4_swap_next_equal": chain_term(s, r, n + 1) == t_n,
            "c5_mixed_subperm": chain_term(s, r, n) <= t_n,
        }
        first = {conds["c1_next_equal"], conds["c2_stationary"], conds["c3_preorder"]}
        second = {conds["c4_swap_next_equal"], conds["c5_mixed_subperm"]}
        consistent = (
            len(first) == 1
            and len(second) == 1
            and (not conds["c1_next_equal"] or conds["c4_swap_next_equal"])
        )
    return StatReport(parity, m, conds, consistent if validated else None, validated)


def pair_permutability_level(
    r: Relation, s: Relation, nmax: int, relax: bool = False
) -> tuple[int, Relation] | None:
    """Least n in 2..nmax with term_n(R,S) == term_n(S,R), together with the
    common value (the join of R and S when both inputs are equivalences)."""
    if not relax:
        if not classify(r).equivalence:
            raise InputError("R must be an equivalence (pass relax=True to override)")
        if not classify(s).equivalence:
            raise InputError("S must be an equivalence (pass relax=True to override)")
    for n in range(2, nmax + 1):
        a = chain_term(r, s, n)
        if a == chain_term(s, r, n):
            return n, a
    return None


def zurab_conditions(r: Relation, n: int) -> dict[str, bool]:
    """Instance evaluation, at this single relation, of the three relation
    conditions whose universal closures characterize n-permutable contexts:
    R^op ⊆ R^{n-1}; R^n = R^{n-1}; term_{n+1}(T, T^op) = term_{n-1}(T, T^op)
    with T = R.  Raw data for universal scans, not a category claim."""
    if n < 3:
        raise InputError(f"n must be at least 3, got {n}")
    if not delta(r.n) <= r:
        raise InputError("R must be reflexive")
    rn1 = power(r, n - 1)
    rd = dual(r)
    return {
        "dual_in_power": rd <= rn1,
        "power_stable": power(r, n) == rn1,
        "mixed_chain_stable": chain_term(r, rd, n + 1) == chain_term(r, rd, n - 1),
    }


def mixed_subpermutability(
    r: Relation, s: Relation, n: int, relax: bool = False
) -> bool:
    """The inclusion term_{2n-1}(S, R) ⊆ term_{2n-1}(R, S) for a preorder R
    and a reflexive S."""
    if n < 2:
        raise InputError(f"n must be at least 2, got {n}")
    if not relax and not classify(r).preorder:
        raise InputError("R must be a preorder (pass relax=True to override)")
    k = 2 * n - 1
    return chain_term(s, r, k) <= chain_term(r, s, k)


def closure_power(r: Relation, n: int):
    """R^{n-1} together with its classification flags: in an n-permutable
    context this power would be the generated equivalence relation."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}")
    if not delta(r.n) <= r:
        raise InputError("R must be reflexive")
    p = power(r, n - 1)
    return p, classify(p)


def supremum_if_permutable(r: Relation, s: Relation) -> Relation:
    """Reference join used by the permutability reports."""
    return supremum_sigma(r, s)
