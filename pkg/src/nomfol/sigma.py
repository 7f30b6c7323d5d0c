"""Substitution algebras, their duals on subsets, and the Fig-style axiom suites.

Carriers are described by small descriptor objects bundling the operations
the suites need; subsets of infinite carriers are characteristic functions
with a declared support, compared only on caller-supplied probe sets.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from . import nominal
from .nominal import Atom, Perm, compose, fresh, fresh_distinct, swap
from .report import SuiteReport, run_law


@dataclass(frozen=True)
class Carrier:
    """A nominal set with a substitution action over a termlike algebra.

    ``atm`` is present exactly when the carrier is termlike (then the
    designated termlike algebra is the carrier itself).
    """

    name: str
    subst: Callable[[Any, Atom, Any], Any]
    equal: Callable[[Any, Any], bool]
    act: Callable[[Perm, Any], Any] = nominal.act
    support: Callable[[Any], frozenset] = nominal.support
    atm: Callable[[Atom], Any] | None = None
    termlike: "Carrier | None" = None

    @property
    def terms(self) -> "Carrier":
        return self if self.termlike is None else self.termlike

    @property
    def is_termlike(self) -> bool:
        return self.atm is not None


@dataclass(frozen=True)
class AmgisAlgebra:
    """Carrier with an action p[u <- a]; finite support is not required."""

    name: str
    amgis: Callable[[Any, Any, Atom], Any]
    termlike: Carrier
    act: Callable[[Perm, Any], Any] = nominal.act
    equal: Callable[[Any, Any], bool] | None = None


@dataclass(frozen=True)
class CharSet:
    """A subset of a carrier given by a membership oracle.

    ``declared_support`` must genuinely support the set; membership must be
    stable under the base carrier's element equality.
    """

    member: Callable[[Any], bool]
    declared_support: frozenset
    label: str = ""

    def _support_(self) -> frozenset:
        return self.declared_support

    def _act_(self, pi: Perm) -> "CharSet":
        inv = pi.inverse()
        return CharSet(
            lambda x, s=self, inv=inv: s.member(nominal.act(inv, x)),
            frozenset(pi(a) for a in self.declared_support),
            f"{pi!r}*{self.label}",
        )

    def __repr__(self):
        return f"CharSet({self.label or '?'}, supp={sorted(self.declared_support)})"


def charsets_agree(p: CharSet, q: CharSet, probes: Sequence) -> bool:
    return all(p.member(x) == q.member(x) for x in probes)


def powamgis_action(alg: Carrier, p: CharSet, u, a: Atom) -> CharSet:
    """p[u <- a] over a sigma-algebra: x is in it iff x[a := u] is in p."""
    return CharSet(
        lambda x: p.member(alg.subst(x, a, u)),
        p.declared_support | alg.terms.support(u) | {a},
        f"{p.label}[{u!r}<-{a}]",
    )


def pow_amgis(alg: Carrier) -> AmgisAlgebra:
    """The amgis-powerset of a sigma-algebra, elements are CharSets."""
    return AmgisAlgebra(
        name=f"PowAmgis({alg.name})",
        amgis=lambda p, u, a: powamgis_action(alg, p, u, a),
        termlike=alg.terms,
    )


def powsigma_action(P: AmgisAlgebra, X: CharSet, a: Atom, u) -> CharSet:
    """X[a := u] over an amgis-algebra, via one fresh witness atom.

    Membership of p tests p[u <- c] in (c a).X at the single fresh c; the
    some/any property of the new-quantifier justifies the single sample.
    """
    usupp = P.termlike.support(u)
    c = fresh(X.declared_support | usupp | {a})
    swapped = X._act_(swap(c, a))
    return CharSet(
        lambda p: swapped.member(P.amgis(p, u, c)),
        (X.declared_support - {a}) | usupp,
        f"{X.label}[{a}:={u!r}]",
    )


def powsigma_conditions(P: AmgisAlgebra, X: CharSet, u_samples, p_probes,
                        atom_samples=()) -> list[str]:
    """Validate the two admission conditions for sigma-powerset elements.

    Sampled, not total: condition 1 quantifies over all u and p, condition 2
    over all atoms and p.  Returns a list of violation descriptions.
    """
    bad = []
    for u in u_samples:
        a = fresh(X.declared_support | P.termlike.support(u))
        for p in p_probes:
            if X.member(P.amgis(p, u, a)) != X.member(p):
                bad.append(f"condition-1 u={u!r} p={p!r}")
                break
    for a in atom_samples:
        b = fresh(X.declared_support | {a})
        for p in p_probes:
            lhs = X.member(P.amgis(p, P.termlike.atm(b), a))
            rhs = X.member(nominal.act(swap(b, a), p))
            if lhs != rhs:
                bad.append(f"condition-2 a={a} p={p!r}")
                break
    return bad


def exactness_check(P: AmgisAlgebra, p, q, u, probes) -> bool:
    """Check one exactness instance: images agreeing at a fresh atom force p=q.

    Returns False only on a witnessed violation (hypothesis holds on the
    probes but p and q differ on them); vacuously True otherwise.
    """
    eq = P.equal or (lambda x, y: charsets_agree(x, y, probes))
    c = fresh(nominal.support(p) | nominal.support(q) | P.termlike.support(u))
    if not eq(P.amgis(p, u, c), P.amgis(q, u, c)):
        return True
    if P.equal is not None:
        return P.equal(p, q)
    return charsets_agree(p, q, probes)


def eq_element_member(P: AmgisAlgebra, p, u, v, probes) -> bool:
    """Membership of p in the powerset equality element (u = v).

    Tests p[u <- c] = p[v <- c] at one fresh c, on the probe set when the
    algebra has no decidable element equality.
    """
    ts = P.termlike
    c = fresh(nominal.support(p) | ts.support(u) | ts.support(v))
    left, right = P.amgis(p, u, c), P.amgis(p, v, c)
    if P.equal is not None:
        return P.equal(left, right)
    return charsets_agree(left, right, probes)


def sim_subst(alg, x, pairs: Sequence[tuple[Atom, Any]]):
    """Simultaneous substitution via freshened targets.

    The result does not depend on pair order or on the fresh-name choice;
    duplicate target atoms are rejected.
    """
    if not pairs:
        return x
    targets = [a for a, _ in pairs]
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate atom in simultaneous substitution: {targets}")
    terms = alg.terms if isinstance(alg, Carrier) else alg.termlike
    avoid = set(targets) | set(alg.support(x))
    for _, u in pairs:
        avoid |= terms.support(u)
    fresh_targets = fresh_distinct(avoid, len(pairs))
    pi = nominal.IDENTITY
    for a, a2 in zip(targets, fresh_targets):
        pi = compose(swap(a2, a), pi)
    out = alg.act(pi, x)
    for a2, (_, u) in zip(fresh_targets, pairs):
        out = alg.subst(out, a2, u)
    return out


# ------------------------------------------------------------ the suites

class Sampler:
    """Random elements, termlikes and atoms for the axiom suites.

    Atoms are drawn from a finite pool so that freshness side-conditions
    can both hold and fail; the suites enforce the side-conditions.
    """

    def __init__(self, element, termlike, pool: tuple[Atom, ...]):
        self.element = element
        self.termlike = termlike
        self.pool = pool

    def atom(self, rng) -> Atom:
        return rng.choice(self.pool)

    def atom_fresh_for(self, rng, *xs_supports) -> Atom:
        avoid = set()
        for s in xs_supports:
            avoid |= s
        options = [a for a in self.pool if a not in avoid]
        if options:
            return rng.choice(options)
        return fresh(avoid)


def sigma_axiom_suite(alg: Carrier, sampler: Sampler, n: int, seed: int = 0) -> SuiteReport:
    """Check the five substitution axioms on n random cases each.

    sigma-a runs only on termlike carriers; side-conditions (distinctness
    and freshness) are enforced by construction on every case.
    """
    rng = random.Random(seed)
    rep = SuiteReport(f"sigma axioms on {alg.name}")
    terms = alg.terms
    sup, tsup = alg.support, terms.support

    if alg.is_termlike:
        def case_a(i):
            a = sampler.atom(rng)
            u = sampler.termlike(rng)
            lhs = alg.subst(alg.atm(a), a, u)
            if not alg.equal(lhs, u):
                return f"a={a} u={u!r} got {lhs!r}"
        run_law(rep, "sigma-a", n, case_a)

    def case_id(i):
        x = sampler.element(rng)
        a = sampler.atom(rng)
        lhs = alg.subst(x, a, terms.atm(a))
        if not alg.equal(lhs, x):
            return f"x={x!r} a={a} got {lhs!r}"
    run_law(rep, "sigma-id", n, case_id)

    def case_fresh(i):
        x = sampler.element(rng)
        u = sampler.termlike(rng)
        a = sampler.atom_fresh_for(rng, sup(x))
        lhs = alg.subst(x, a, u)
        if not alg.equal(lhs, x):
            return f"x={x!r} a={a} u={u!r} got {lhs!r}"
    run_law(rep, "sigma-#", n, case_fresh)

    def case_alpha(i):
        x = sampler.element(rng)
        u = sampler.termlike(rng)
        a = sampler.atom(rng)
        b = sampler.atom_fresh_for(rng, sup(x), {a})
        lhs = alg.subst(x, a, u)
        rhs = alg.subst(alg.act(swap(b, a), x), b, u)
        if not alg.equal(lhs, rhs):
            return f"x={x!r} a={a} b={b} u={u!r}"
    run_law(rep, "sigma-alpha", n, case_alpha)

    def case_sigma(i):
        x = sampler.element(rng)
        u = sampler.termlike(rng)
        v = sampler.termlike(rng)
        a = sampler.atom_fresh_for(rng, tsup(v))
        b = sampler.atom_fresh_for(rng, {a})
        lhs = alg.subst(alg.subst(x, a, u), b, v)
        rhs = alg.subst(alg.subst(x, b, v), a, terms.subst(u, b, v))
        if not alg.equal(lhs, rhs):
            return f"x={x!r} a={a} u={u!r} b={b} v={v!r}"
    run_law(rep, "sigma-sigma", n, case_sigma)
    return rep


def amgis_axiom_suite(P: AmgisAlgebra, sampler: Sampler, n: int,
                      probes: Sequence = (), seed: int = 0) -> SuiteReport:
    """Check amgis-sigma; membership-level over probes for CharSet carriers."""
    rng = random.Random(seed)
    rep = SuiteReport(f"amgis axioms on {P.name}")
    ts = P.termlike
    eq = P.equal or (lambda x, y: charsets_agree(x, y, probes))

    def case(i):
        p = sampler.element(rng)
        u = sampler.termlike(rng)
        v = sampler.termlike(rng)
        a = sampler.atom_fresh_for(rng, ts.support(v))
        b = sampler.atom_fresh_for(rng, {a})
        lhs = P.amgis(P.amgis(p, v, b), u, a)
        rhs = P.amgis(P.amgis(p, ts.subst(u, b, v), a), v, b)
        if not eq(lhs, rhs):
            return f"p={p!r} u={u!r} v={v!r} a={a} b={b}"
    run_law(rep, "amgis-sigma", n, case)
    return rep
