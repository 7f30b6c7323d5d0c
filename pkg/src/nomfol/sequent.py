"""Sequent calculus: proof checking, bounded search, countermodel search.

Sequents are finite alpha-aware sets, so contraction is implicit.  The
prover is sound by construction and bounded; not-found is never read as a
refutation.  Countermodels are exhaustive up to the size bound, so a
found model is a certificate.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Iterator

from .nominal import Atom, act, atoms, fresh, swap
from .syntax import (All, And, App, BOT, Bot, Eq, Formula, Neg, Pred,
                     Signature, SyntaxError_, Term, Var, all_atoms, alpha_key,
                     build_atom_map, free_atoms, free_atoms_term,
                     parse_formula, parse_term, pretty, pretty_term,
                     random_formula, random_term, subst_formula, subterms)
from .tarski import OrdinaryModel, Valuation, iter_models, standard_eval


def _norm(fs) -> tuple[Formula, ...]:
    seen: dict[str, Formula] = {}
    for f in fs:
        seen.setdefault(alpha_key(f), f)
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True)
class Sequent:
    left: tuple[Formula, ...]
    right: tuple[Formula, ...]

    def key(self) -> tuple:
        return (tuple(alpha_key(f) for f in self.left),
                tuple(alpha_key(f) for f in self.right))

    def free_atoms(self) -> frozenset[Atom]:
        out: frozenset[Atom] = frozenset()
        for f in self.left + self.right:
            out |= free_atoms(f)
        return out

    def __repr__(self):
        return format_sequent(self)


def sequent(left, right) -> Sequent:
    return Sequent(_norm(left), _norm(right))


def _has(fs, phi: Formula) -> bool:
    k = alpha_key(phi)
    return any(alpha_key(f) == k for f in fs)


def _without(fs, phi: Formula) -> tuple[Formula, ...]:
    k = alpha_key(phi)
    return tuple(f for f in fs if alpha_key(f) != k)


def format_sequent(s: Sequent) -> str:
    lhs = ", ".join(pretty(f) for f in s.left)
    rhs = ", ".join(pretty(f) for f in s.right)
    return f"{lhs} |- {rhs}".strip()


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail:
        parts.append(tail)
    return [p.strip() for p in parts if p.strip()]


def parse_sequent(text: str, sig: Signature,
                  atom_map: dict[str, int] | None = None) -> Sequent:
    if text.count("|-") != 1:
        raise SyntaxError_("a sequent needs exactly one '|-'")
    lhs, rhs = text.split("|-")
    left, right = _split_top(lhs), _split_top(rhs)
    if atom_map is None:
        atom_map = build_atom_map(left + right, sig)
    return sequent([parse_formula(p, sig, atom_map) for p in left],
                   [parse_formula(p, sig, atom_map) for p in right])


# -------------------------------------------------------------- proofs

@dataclass(frozen=True)
class Proof:
    rule: str
    conclusion: Sequent
    witnesses: tuple = ()
    premises: tuple["Proof", ...] = ()


_ARITY = {"hyp": 0, "botL": 0, "eqR": 1, "andL": 1, "andR": 2,
          "negL": 1, "negR": 1, "allL": 1, "allR": 1, "eqL": 1}


@dataclass(frozen=True)
class ProverBudget:
    max_depth: int = 8
    term_universe: tuple[Term, ...] | None = None
    max_branching: int = 64

    def __post_init__(self):
        if self.max_depth < 0 or self.max_branching < 0:
            raise ValueError("budget bounds must be >= 0")


def formula_terms(phi: Formula) -> Iterator[Term]:
    if isinstance(phi, (Bot,)):
        return
    if isinstance(phi, Eq):
        yield from subterms(phi.lhs)
        yield from subterms(phi.rhs)
    elif isinstance(phi, Pred):
        for t in phi.args:
            yield from subterms(t)
    elif isinstance(phi, And):
        yield from formula_terms(phi.lhs)
        yield from formula_terms(phi.rhs)
    elif isinstance(phi, Neg):
        yield from formula_terms(phi.body)
    elif isinstance(phi, All):
        yield from formula_terms(phi.body)


def default_universe(s: Sequent, sig: Signature) -> tuple[Term, ...]:
    """Subterms of the sequent, signature constants, and one fresh atom."""
    terms: dict[str, Term] = {}
    for f in s.left + s.right:
        for t in formula_terms(f):
            terms.setdefault(pretty_term(t), t)
    for c in sig.constants():
        t = App(c, ())
        terms.setdefault(pretty_term(t), t)
    t = Var(fresh(s.free_atoms()))
    terms.setdefault(pretty_term(t), t)
    return tuple(terms[k] for k in sorted(terms))


def _safe_abstract(phi: Formula, r: Term, hole: Atom, picks: set[int] | None):
    """Replace occurrences of r in phi by the hole atom.

    Occurrences under a binder that captures an atom of r are never
    touched; ``picks`` selects safe-occurrence indices in leftmost-outermost
    order (None means all).  Returns (template, count of safe occurrences).
    """
    ratoms = free_atoms_term(r)
    counter = [0]

    def term(t: Term, bound: frozenset[Atom]) -> Term:
        if t == r and not (bound & ratoms):
            i = counter[0]
            counter[0] += 1
            if picks is None or i in picks:
                return Var(hole)
            return t
        if isinstance(t, App):
            return App(t.fn, tuple(term(s, bound) for s in t.args))
        return t

    def go(f: Formula, bound: frozenset[Atom]) -> Formula:
        if isinstance(f, Bot):
            return f
        if isinstance(f, Eq):
            return Eq(term(f.lhs, bound), term(f.rhs, bound))
        if isinstance(f, Pred):
            return Pred(f.name, tuple(term(t, bound) for t in f.args))
        if isinstance(f, And):
            return And(go(f.lhs, bound), go(f.rhs, bound))
        if isinstance(f, Neg):
            return Neg(go(f.body, bound))
        if isinstance(f, All):
            return All(f.binder, go(f.body, bound | {f.binder}))
        raise TypeError(f"not a formula: {f!r}")

    out = go(phi, frozenset())
    return out, counter[0]


def _allR_witness(s: Sequent, principal: All) -> Atom:
    rest = _without(s.right, principal)
    blocked = frozenset()
    for f in s.left + rest:
        blocked |= free_atoms(f)
    a = principal.binder
    if a not in blocked:
        return a
    return fresh(blocked | free_atoms(principal.body) | {a})


# ------------------------------------------------------------- checker

def check_proof(p: Proof) -> tuple[bool, str]:
    """Validate every node against its rule, matching up to alpha."""
    try:
        _check_node(p)
        return True, "ok"
    except _CheckFail as e:
        return False, str(e)


class _CheckFail(Exception):
    pass


def _fail(p: Proof, why: str):
    raise _CheckFail(f"{p.rule} at '{format_sequent(p.conclusion)}': {why}")


def _expect_premise(p: Proof, i: int, *wants: Sequent):
    # the principal may also occur in the context, so keep and drop
    # variants of the premise are both instances of the literal rule
    got = p.premises[i].conclusion
    if got.key() not in {w.key() for w in wants}:
        _fail(p, f"premise {i + 1} should be '{format_sequent(wants[0])}', "
                 f"got '{format_sequent(got)}'")


def _check_node(p: Proof) -> None:
    s = p.conclusion
    if p.rule not in _ARITY:
        _fail(p, "unknown rule")
    if len(p.premises) != _ARITY[p.rule]:
        _fail(p, f"expected {_ARITY[p.rule]} premises, got {len(p.premises)}")

    if p.rule == "hyp":
        if not any(_has(s.right, f) for f in s.left):
            _fail(p, "no shared formula between the two sides")
    elif p.rule == "botL":
        if not _has(s.left, BOT):
            _fail(p, "bottom is not on the left")
    elif p.rule == "eqR":
        (r,) = p.witnesses
        want = sequent(s.left + (Eq(r, r),), s.right)
        _expect_premise(p, 0, want)
    elif p.rule == "andL":
        (principal,) = p.witnesses
        if not isinstance(principal, And) or not _has(s.left, principal):
            _fail(p, "principal conjunction is not on the left")
        parts = (principal.lhs, principal.rhs)
        _expect_premise(p, 0,
                        sequent(_without(s.left, principal) + parts, s.right),
                        sequent(s.left + parts, s.right))
    elif p.rule == "andR":
        (principal,) = p.witnesses
        if not isinstance(principal, And) or not _has(s.right, principal):
            _fail(p, "principal conjunction is not on the right")
        rest = _without(s.right, principal)
        _expect_premise(p, 0, sequent(s.left, rest + (principal.lhs,)),
                        sequent(s.left, s.right + (principal.lhs,)))
        _expect_premise(p, 1, sequent(s.left, rest + (principal.rhs,)),
                        sequent(s.left, s.right + (principal.rhs,)))
    elif p.rule == "negL":
        (principal,) = p.witnesses
        if not isinstance(principal, Neg) or not _has(s.left, principal):
            _fail(p, "principal negation is not on the left")
        _expect_premise(p, 0,
                        sequent(_without(s.left, principal), s.right + (principal.body,)),
                        sequent(s.left, s.right + (principal.body,)))
    elif p.rule == "negR":
        (principal,) = p.witnesses
        if not isinstance(principal, Neg) or not _has(s.right, principal):
            _fail(p, "principal negation is not on the right")
        _expect_premise(p, 0,
                        sequent(s.left + (principal.body,), _without(s.right, principal)),
                        sequent(s.left + (principal.body,), s.right))
    elif p.rule == "allL":
        principal, r = p.witnesses
        if not isinstance(principal, All) or not _has(s.left, principal):
            _fail(p, "principal quantifier is not on the left")
        inst = subst_formula(principal.body, principal.binder, r)
        got = p.premises[0].conclusion
        keep = sequent(s.left + (inst,), s.right)
        drop = sequent(_without(s.left, principal) + (inst,), s.right)
        if got.key() not in (keep.key(), drop.key()):
            _fail(p, f"premise should instantiate with {pretty_term(r)}")
    elif p.rule == "allR":
        principal, c = p.witnesses
        if not isinstance(principal, All) or not _has(s.right, principal):
            _fail(p, "principal quantifier is not on the right")
        rest = _without(s.right, principal)
        blocked = frozenset()
        for f in s.left + rest:
            blocked |= free_atoms(f)
        if c in blocked:
            _fail(p, f"witness atom {c} is free in the context")
        if c in free_atoms(principal):
            _fail(p, f"witness atom {c} is free in the quantified body")
        body = act(swap(c, principal.binder), principal.body)
        _expect_premise(p, 0, sequent(s.left, rest + (body,)),
                        sequent(s.left, s.right + (body,)))
    elif p.rule == "eqL":
        equation, template, a = p.witnesses
        if not isinstance(equation, Eq) or not _has(s.left, equation):
            _fail(p, "equation is not on the left")
        r_new, r_old = equation.lhs, equation.rhs
        inst_old = subst_formula(template, a, r_old)
        inst_new = subst_formula(template, a, r_new)
        if not _has(s.left, inst_old):
            _fail(p, "rewritten formula is not on the left")
        got = p.premises[0].conclusion
        keep = sequent(s.left + (inst_new,), s.right)
        drop = sequent(_without(s.left, inst_old) + (inst_new,), s.right)
        if got.key() not in (keep.key(), drop.key()):
            _fail(p, "premise does not match the rewrite")
    for q in p.premises:
        _check_node(q)


# -------------------------------------------------------------- search

def prove(s: Sequent, budget: ProverBudget = ProverBudget(),
          sig: Signature | None = None) -> Proof | None:
    """Bounded backward search over the rules; sound by construction."""
    sig = sig or Signature((), ())
    universe = budget.term_universe or default_universe(s, sig)
    memo_ok: dict[tuple, Proof] = {}
    memo_fail: dict[tuple, int] = {}

    def closing(sq: Sequent) -> Proof | None:
        if any(_has(sq.right, f) for f in sq.left):
            return Proof("hyp", sq)
        if _has(sq.left, BOT):
            return Proof("botL", sq)
        return None

    def moves(sq: Sequent):
        out = []
        for f in sq.left:
            if isinstance(f, And):
                prem = sequent(_without(sq.left, f) + (f.lhs, f.rhs), sq.right)
                out.append(("andL", (f,), [prem]))
            elif isinstance(f, Neg):
                prem = sequent(_without(sq.left, f), sq.right + (f.body,))
                out.append(("negL", (f,), [prem]))
        for f in sq.right:
            if isinstance(f, Neg):
                prem = sequent(sq.left + (f.body,), _without(sq.right, f))
                out.append(("negR", (f,), [prem]))
            elif isinstance(f, All):
                c = _allR_witness(sq, f)
                body = act(swap(c, f.binder), f.body)
                prem = sequent(sq.left, _without(sq.right, f) + (body,))
                out.append(("allR", (f, c), [prem]))
        for f in sq.right:
            if isinstance(f, And):
                rest = _without(sq.right, f)
                out.append(("andR", (f,), [sequent(sq.left, rest + (f.lhs,)),
                                           sequent(sq.left, rest + (f.rhs,))]))
        for f in sq.left:
            if isinstance(f, All):
                for r in universe:
                    inst = subst_formula(f.body, f.binder, r)
                    if _has(sq.left, inst):
                        continue
                    out.append(("allL", (f, r), [sequent(sq.left + (inst,), sq.right)]))
        mentions_eq = any(isinstance(f, Eq) for f in sq.left) or \
            any(isinstance(f, Eq) for f in sq.right)
        if mentions_eq:
            for r in universe:
                refl = Eq(r, r)
                if _has(sq.left, refl):
                    continue
                out.append(("eqR", (r,), [sequent(sq.left + (refl,), sq.right)]))
            out.extend(_eqL_moves(sq))
        return out[: budget.max_branching]

    def _eqL_moves(sq: Sequent):
        out = []
        for e in sq.left:
            if not isinstance(e, Eq) or e.lhs == e.rhs:
                continue
            r_new, r_old = e.lhs, e.rhs
            for target in sq.left:
                if target is e:
                    continue
                hole = fresh(sq.free_atoms() | all_atoms(target)
                             | free_atoms_term(r_old) | free_atoms_term(r_new))
                _, total = _safe_abstract(target, r_old, hole, set())
                if total == 0:
                    continue
                pick_sets = [None] + [{i} for i in range(min(total, 2))]
                for picks in pick_sets:
                    template, _ = _safe_abstract(target, r_old, hole, picks)
                    inst_new = subst_formula(template, hole, r_new)
                    if _has(sq.left, inst_new):
                        continue
                    prem = sequent(_without(sq.left, target) + (inst_new,), sq.right)
                    out.append(("eqL", (e, template, hole), [prem]))
        return out

    def search(sq: Sequent, depth: int) -> Proof | None:
        key = sq.key()
        if key in memo_ok:
            p = memo_ok[key]
            return Proof(p.rule, sq, p.witnesses, p.premises)
        leaf = closing(sq)
        if leaf is not None:
            memo_ok[key] = leaf
            return leaf
        if depth <= 0 or memo_fail.get(key, -1) >= depth:
            return None
        for rule, wits, prems in moves(sq):
            subproofs = []
            for prem in prems:
                sub = search(prem, depth - 1)
                if sub is None:
                    break
                subproofs.append(sub)
            else:
                proof = Proof(rule, sq, wits, tuple(subproofs))
                memo_ok[key] = proof
                return proof
        memo_fail[key] = depth
        return None

    return search(sequent(s.left, s.right), budget.max_depth)


def find_countermodel(s: Sequent, sig: Signature, max_k: int
                      ) -> tuple[OrdinaryModel, Valuation] | None:
    """Exhaustive deterministic search for a falsifying model and valuation."""
    free = tuple(sorted(s.free_atoms(), key=lambda a: a.id))
    for k in range(1, max_k + 1):
        for model in iter_models(sig, k):
            for combo in itertools.product(range(k), repeat=len(free)):
                vs = Valuation(dict(zip(free, combo)), 0)
                if all(standard_eval(f, model, vs) for f in s.left) and \
                        not any(standard_eval(f, model, vs) for f in s.right):
                    return model, vs
    return None


# ----------------------------------------------- forward generation

def _random_context(sig: Signature, rng, pool) -> list[Formula]:
    out = []
    for _ in range(rng.randint(0, 2)):
        out.append(random_formula(sig, rng, pool, rng.randint(0, 2)))
    return out


def _leaf(sig: Signature, rng, pool) -> Proof:
    roll = rng.random()
    left = _random_context(sig, rng, pool)
    right = _random_context(sig, rng, pool)
    if roll < 0.15:
        return Proof("botL", sequent(left + [BOT], right))
    chi = random_formula(sig, rng, pool, rng.randint(0, 2))
    if roll < 0.35:
        # seed an equation so the forward equality rules can fire
        r = random_term(sig, rng, pool, 1)
        left.append(Eq(r, r))
    return Proof("hyp", sequent(left + [chi], right + [chi]))


def _forward_step(p: Proof, sig: Signature, rng, pool) -> Proof | None:
    s = p.conclusion
    moves = ["andL", "negL", "negR", "andR", "allR", "allL", "eqR", "eqL"]
    rng.shuffle(moves)
    for rule in moves:
        if rule == "andL" and len(s.left) >= 1:
            f1, f2 = rng.choice(s.left), rng.choice(s.left)
            conc = sequent(tuple(f for f in s.left
                                 if f is not f1 and f is not f2) + (And(f1, f2),),
                           s.right)
            return Proof("andL", conc, (And(f1, f2),), (p,))
        if rule == "negL" and s.right:
            psi = rng.choice(s.right)
            conc = sequent(s.left + (Neg(psi),), _without(s.right, psi))
            return Proof("negL", conc, (Neg(psi),), (p,))
        if rule == "negR" and s.left:
            phi = rng.choice(s.left)
            conc = sequent(_without(s.left, phi), s.right + (Neg(phi),))
            return Proof("negR", conc, (Neg(phi),), (p,))
        if rule == "andR" and s.right:
            psi1 = rng.choice(s.right)
            rest = _without(s.right, psi1)
            if _has(s.left, BOT):
                psi2 = random_formula(sig, rng, pool, 1)
                second = Proof("botL", sequent(s.left, rest + (psi2,)))
            elif s.left:
                # putting a left formula on the right closes by hyp
                psi2 = rng.choice(s.left)
                second = Proof("hyp", sequent(s.left, rest + (psi2,)))
            else:
                psi2 = psi1
                second = p
            conc = sequent(s.left, rest + (And(psi1, psi2),))
            return Proof("andR", conc, (And(psi1, psi2),), (p, second))
        if rule == "allR" and s.right:
            psi = rng.choice(s.right)
            rest = _without(s.right, psi)
            blocked = frozenset()
            for f in s.left + rest:
                blocked |= free_atoms(f)
            options = [a for a in free_atoms(psi) if a not in blocked]
            a = rng.choice(options) if options else fresh(blocked | free_atoms(psi))
            conc = sequent(s.left, rest + (All(a, psi),))
            return Proof("allR", conc, (All(a, psi), a), (p,))
        if rule == "allL" and s.left:
            xi = rng.choice(s.left)
            cands = list(formula_terms(xi))
            if not cands:
                continue
            r = rng.choice(cands)
            hole = fresh(s.free_atoms() | all_atoms(xi) | free_atoms_term(r))
            template, total = _safe_abstract(xi, r, hole, None)
            if total == 0:
                continue
            principal = All(hole, template)
            conc = sequent(_without(s.left, xi) + (principal,), s.right)
            return Proof("allL", conc, (principal, r), (p,))
        if rule == "eqR":
            refl = [f for f in s.left if isinstance(f, Eq) and f.lhs == f.rhs]
            if not refl:
                continue
            e = rng.choice(refl)
            conc = sequent(_without(s.left, e), s.right)
            return Proof("eqR", conc, (e.lhs,), (p,))
        if rule == "eqL":
            eqs = [f for f in s.left if isinstance(f, Eq) and f.lhs != f.rhs]
            others = [f for f in s.left if not (isinstance(f, Eq) and f.lhs != f.rhs)]
            if not eqs or not others:
                continue
            e = rng.choice(eqs)
            xi = rng.choice(others)
            hole = fresh(s.free_atoms() | all_atoms(xi)
                         | free_atoms_term(e.lhs) | free_atoms_term(e.rhs))
            template, total = _safe_abstract(xi, e.lhs, hole, None)
            if total == 0:
                continue
            inst_old = subst_formula(template, hole, e.rhs)
            conc = sequent(_without(s.left, xi) + (inst_old,), s.right)
            return Proof("eqL", conc, (e, template, hole), (p,))
    return None


def generate_derivable(sig: Signature, seed: int, steps: int,
                       pool: tuple[Atom, ...] | None = None) -> list[tuple[Sequent, Proof]]:
    """Leaves plus forward rule applications; every pair checks."""
    rng = random.Random(seed)
    pool = pool or atoms(0, 1, 2)
    p = _leaf(sig, rng, pool)
    out = [(p.conclusion, p)]
    for _ in range(steps):
        nxt = _forward_step(p, sig, rng, pool)
        if nxt is None:
            break
        p = nxt
        out.append((p.conclusion, p))
    return out


# ------------------------------------------------------------ herbrand

@dataclass(frozen=True)
class HerbrandResult:
    status: str  # equivalent | distinct | unknown
    countermodel: tuple[OrdinaryModel, Valuation] | None = None


def herbrand_equiv(phi: Formula, psi: Formula, sig: Signature,
                   budget: ProverBudget = ProverBudget(),
                   max_k: int = 2) -> HerbrandResult:
    """Interprovability, refutation by countermodel, or unknown.

    A sequent both proved and refuted would be a soundness bug and raises.
    """
    fwd = prove(sequent([phi], [psi]), budget, sig)
    bwd = prove(sequent([psi], [phi]), budget, sig)
    cm = find_countermodel(sequent([phi], [psi]), sig, max_k) or \
        find_countermodel(sequent([psi], [phi]), sig, max_k)
    if fwd is not None and bwd is not None:
        if cm is not None:
            raise RuntimeError("soundness bug: sequent both proved and refuted")
        return HerbrandResult("equivalent")
    if cm is not None:
        return HerbrandResult("distinct", cm)
    return HerbrandResult("unknown")


# -------------------------------------------------------- serialisation

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_proof(p: Proof) -> str:
    parts = [p.rule, _quote(format_sequent(p.conclusion))]
    for w in p.witnesses:
        if isinstance(w, Atom):
            parts.append(_quote(w.name))
        elif isinstance(w, Term):
            parts.append(_quote(pretty_term(w)))
        elif isinstance(w, Formula):
            parts.append(_quote(pretty(w)))
        else:
            raise TypeError(f"bad witness {w!r}")
    for q in p.premises:
        parts.append(format_proof(q))
    return "(" + " ".join(parts) + ")"


_WITNESS_KINDS = {"hyp": "", "botL": "", "eqR": "t", "andL": "f", "andR": "f",
                  "negL": "f", "negR": "f", "allL": "ft", "allR": "fa",
                  "eqL": "ffa"}


def _sexpr_tokens(text: str) -> Iterator[tuple[str, str]]:
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()":
            yield (ch, ch)
            i += 1
        elif ch == '"':
            j, out = i + 1, []
            while j < len(text) and text[j] != '"':
                if text[j] == "\\":
                    j += 1
                out.append(text[j])
                j += 1
            if j >= len(text):
                raise SyntaxError_("unterminated string in proof file")
            yield ("str", "".join(out))
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()"':
                j += 1
            yield ("sym", text[i:j])
            i = j


def parse_proof(text: str, sig: Signature) -> Proof:
    toks = list(_sexpr_tokens(text))
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else ("eof", "")

    def take(kind):
        k, v = peek()
        if k != kind:
            raise SyntaxError_(f"expected {kind} in proof, got {v!r}")
        pos[0] += 1
        return v

    def atom_of(name: str) -> Atom:
        m = re.fullmatch(r"a(\d+)", name)
        if not m:
            raise SyntaxError_(f"bad atom name {name!r} in proof")
        return Atom(int(m.group(1)))

    def node() -> Proof:
        take("(")
        rule = take("sym")
        if rule not in _ARITY:
            raise SyntaxError_(f"unknown rule {rule!r} in proof")
        conclusion_text = take("str")
        raws = []
        for kind in _WITNESS_KINDS[rule]:
            raws.append((kind, take("str")))
        formula_texts = [t for k, t in raws if k in "tf"]
        pieces = [p for p in conclusion_text.split("|-")] + formula_texts
        amap = build_atom_map(pieces, sig)
        conclusion = parse_sequent(conclusion_text, sig, amap)
        wits = []
        for kind, raw in raws:
            if kind == "t":
                wits.append(parse_term(raw, sig, amap))
            elif kind == "f":
                wits.append(parse_formula(raw, sig, amap))
            else:
                wits.append(atom_of(raw))
        premises = []
        while peek()[0] == "(":
            premises.append(node())
        take(")")
        return Proof(rule, conclusion, tuple(wits), tuple(premises))

    p = node()
    if peek()[0] != "eof":
        raise SyntaxError_("trailing input after proof")
    return p
