"""Carrier descriptors and random samplers for the axiom suites.

Probe sets default to all terms up to depth 2 over the active signature
plus a few extra atoms: small, deterministic, and enough to exercise the
binder interactions the membership-level laws care about.
"""
from __future__ import annotations

import itertools
import random

from .nominal import atoms
from .sigma import Carrier, CharSet, Sampler
from .syntax import (App, Signature, Term, Var, alpha_eq, free_atoms,
                     free_atoms_term, random_formula, random_term,
                     subst_formula, subst_term)
from .tarski import random_tablefun


def term_carrier(sig: Signature) -> Carrier:
    """First-order terms as a termlike algebra; substitution is the real one."""
    return Carrier(
        name="terms",
        subst=subst_term,
        equal=lambda s, t: s == t,
        support=free_atoms_term,
        atm=Var,
    )


def formula_carrier(sig: Signature) -> Carrier:
    """Predicates over terms; equality is alpha-equivalence."""
    return Carrier(
        name="formulas",
        subst=subst_formula,
        equal=alpha_eq,
        support=free_atoms,
        termlike=term_carrier(sig),
    )


DEFAULT_POOL = atoms(0, 1, 2, 3, 4)


def term_sampler(sig: Signature, pool=DEFAULT_POOL, depth: int = 3) -> Sampler:
    gen = lambda rng: random_term(sig, rng, pool, rng.randint(0, depth))
    return Sampler(element=gen, termlike=gen, pool=pool)


def formula_sampler(sig: Signature, pool=DEFAULT_POOL, depth: int = 3) -> Sampler:
    return Sampler(
        element=lambda rng: random_formula(sig, rng, pool, rng.randint(0, depth)),
        termlike=lambda rng: random_term(sig, rng, pool, rng.randint(0, 2)),
        pool=pool,
    )


def tarski_sampler(k: int, pool=DEFAULT_POOL, truth: bool = False) -> Sampler:
    """Random canonical TableFuns; termlike side is domain-valued."""
    return Sampler(
        element=lambda rng: random_tablefun(k, rng, pool,
                                            outputs=None if truth else k),
        termlike=lambda rng: random_tablefun(k, rng, pool, outputs=k),
        pool=pool,
    )


def tarski_foleq_sampler(k: int, pool=DEFAULT_POOL) -> Sampler:
    return tarski_sampler(k, pool, truth=True)


def probe_terms(sig: Signature, depth: int = 2, extra_atoms: int = 3) -> list[Term]:
    """All terms up to the given depth over the signature plus extra atoms."""
    base: list[Term] = [Var(a) for a in atoms(*range(extra_atoms))]
    layer = list(base)
    for _ in range(depth):
        new: list[Term] = []
        for name, ar in sig.functions:
            for combo in itertools.product(layer if ar else [()], repeat=max(ar, 1)):
                args = combo if ar else ()
                new.append(App(name, tuple(args)))
        layer = base + new
    out, seen = [], set()
    for t in layer:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def term_charset(sig: Signature, rng: random.Random, pool=DEFAULT_POOL) -> CharSet:
    """A random finitely supported set of terms, as a membership oracle."""
    kind = rng.randrange(4)
    if kind == 0:
        sample = [random_term(sig, rng, pool, rng.randint(0, 2))
                  for _ in range(rng.randint(1, 4))]
        cs = CharSet(lambda t, ss=tuple(sample): t in ss,
                     frozenset().union(*(free_atoms_term(t) for t in sample)),
                     "finite")
    elif kind == 1:
        a = rng.choice(pool)
        cs = CharSet(lambda t, a=a: a in free_atoms_term(t), frozenset((a,)),
                     f"mentions-{a}")
    elif kind == 2 and sig.functions:
        name, _ = rng.choice(sig.functions)
        cs = CharSet(lambda t, n=name: isinstance(t, App) and t.fn == n,
                     frozenset(), f"head-{name}")
    else:
        d = rng.randint(0, 2)
        cs = CharSet(lambda t, d=d: _depth(t) <= d, frozenset(), f"depth<={d}")
    if rng.random() < 0.3:
        inner = cs
        cs = CharSet(lambda t, i=inner: not i.member(t), inner.declared_support,
                     f"not-{inner.label}")
    return cs


def _depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max((_depth(s) for s in t.args), default=0)


def charset_sampler(sig: Signature, pool=DEFAULT_POOL) -> Sampler:
    return Sampler(
        element=lambda rng: term_charset(sig, rng, pool),
        termlike=lambda rng: random_term(sig, rng, pool, rng.randint(0, 2)),
        pool=pool,
    )
