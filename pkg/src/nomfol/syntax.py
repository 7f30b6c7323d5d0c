"""First-order syntax: signatures, terms, predicates, parser and printer.

Binders are named atoms; alpha-equivalence and capture-avoiding
substitution do the renaming on demand, always choosing the lowest fresh
atom so results are reproducible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .nominal import Atom, Perm, act, fresh, swap


class SyntaxError_(ValueError):
    """Lexing, parsing or arity error, with position information."""


@dataclass(frozen=True)
class Signature:
    functions: tuple[tuple[str, int], ...]
    predicates: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.functions] + [n for n, _ in self.predicates]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol name in signature")
        for n, ar in self.functions + self.predicates:
            if ar < 0:
                raise ValueError(f"negative arity for {n}")

    def fun_arity(self, name: str) -> int | None:
        for n, ar in self.functions:
            if n == name:
                return ar
        return None

    def pred_arity(self, name: str) -> int | None:
        for n, ar in self.predicates:
            if n == name:
                return ar
        return None

    def constants(self) -> list[str]:
        return [n for n, ar in self.functions if ar == 0]


def parse_signature(text: str) -> Signature:
    """Parse signature file lines: ``fun name arity`` / ``pred name arity``."""
    funs, preds = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] not in ("fun", "pred"):
            raise SyntaxError_(f"line {lineno}: expected 'fun|pred name arity'")
        name, arity = parts[1], parts[2]
        if not arity.isdigit():
            raise SyntaxError_(f"line {lineno}: bad arity {arity!r}")
        (funs if parts[0] == "fun" else preds).append((name, int(arity)))
    return Signature(tuple(funs), tuple(preds))


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    atom: Atom

    def _act_(self, pi: Perm) -> "Var":
        return Var(pi(self.atom))

    def _support_(self) -> frozenset[Atom]:
        return frozenset((self.atom,))

    def __repr__(self):
        return self.atom.name


@dataclass(frozen=True)
class App(Term):
    fn: str
    args: tuple[Term, ...]

    def _act_(self, pi: Perm) -> "App":
        return App(self.fn, tuple(act(pi, t) for t in self.args))

    def _support_(self) -> frozenset[Atom]:
        out: frozenset[Atom] = frozenset()
        for t in self.args:
            out |= t._support_()
        return out

    def __repr__(self):
        if not self.args:
            return self.fn
        return f"{self.fn}({', '.join(map(repr, self.args))})"


def free_atoms_term(t: Term) -> frozenset[Atom]:
    return t._support_()


def subst_term(t: Term, a: Atom, r: Term) -> Term:
    if isinstance(t, Var):
        return r if t.atom == a else t
    return App(t.fn, tuple(subst_term(s, a, r) for s in t.args))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for s in t.args:
            yield from subterms(s)


# ------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Bot(Formula):
    def _act_(self, pi):
        return self

    def _support_(self):
        return frozenset()

    def __repr__(self):
        return "bottom"


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def _act_(self, pi):
        return Eq(act(pi, self.lhs), act(pi, self.rhs))

    def _support_(self):
        return self.lhs._support_() | self.rhs._support_()

    def __repr__(self):
        return f"{self.lhs!r} = {self.rhs!r}"


@dataclass(frozen=True)
class Pred(Formula):
    name: str
    args: tuple[Term, ...]

    def _act_(self, pi):
        return Pred(self.name, tuple(act(pi, t) for t in self.args))

    def _support_(self):
        out: frozenset[Atom] = frozenset()
        for t in self.args:
            out |= t._support_()
        return out

    def __repr__(self):
        if not self.args:
            return self.name
        return f"{self.name}({', '.join(map(repr, self.args))})"


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula

    def _act_(self, pi):
        return And(act(pi, self.lhs), act(pi, self.rhs))

    def _support_(self):
        return free_atoms(self.lhs) | free_atoms(self.rhs)

    def __repr__(self):
        return pretty(self)


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula

    def _act_(self, pi):
        return Neg(act(pi, self.body))

    def _support_(self):
        return free_atoms(self.body)

    def __repr__(self):
        return pretty(self)


@dataclass(frozen=True)
class All(Formula):
    binder: Atom
    body: Formula

    def _act_(self, pi):
        return All(pi(self.binder), act(pi, self.body))

    def _support_(self):
        return free_atoms(self.body) - {self.binder}

    def __repr__(self):
        return pretty(self)


BOT = Bot()
TOP = Neg(BOT)


def Or(a: Formula, b: Formula) -> Formula:
    return Neg(And(Neg(a), Neg(b)))


def Imp(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def free_atoms(phi: Formula) -> frozenset[Atom]:
    """Free atoms; equals the nominal support of the alpha-class."""
    return phi._support_()


def all_atoms(phi: Formula) -> frozenset[Atom]:
    """Every atom occurring in the tree, binders and bound occurrences included."""
    if isinstance(phi, (Bot, Eq, Pred)):
        return phi._support_()
    if isinstance(phi, And):
        return all_atoms(phi.lhs) | all_atoms(phi.rhs)
    if isinstance(phi, Neg):
        return all_atoms(phi.body)
    if isinstance(phi, All):
        return all_atoms(phi.body) | {phi.binder}
    raise TypeError(f"not a formula: {phi!r}")


def subst_formula(phi: Formula, a: Atom, r: Term) -> Formula:
    """Capture-avoiding substitution of the term r for the atom a.

    Clashing binders are renamed, by a swap, to the lowest atom fresh for
    (body, r, a), so outputs are canonical.
    """
    if isinstance(phi, Bot):
        return phi
    if isinstance(phi, Eq):
        return Eq(subst_term(phi.lhs, a, r), subst_term(phi.rhs, a, r))
    if isinstance(phi, Pred):
        return Pred(phi.name, tuple(subst_term(t, a, r) for t in phi.args))
    if isinstance(phi, And):
        return And(subst_formula(phi.lhs, a, r), subst_formula(phi.rhs, a, r))
    if isinstance(phi, Neg):
        return Neg(subst_formula(phi.body, a, r))
    if isinstance(phi, All):
        b, body = phi.binder, phi.body
        if b == a:
            return phi
        if a not in free_atoms(body):
            return phi
        if b in free_atoms_term(r):
            b2 = fresh(free_atoms(body) | free_atoms_term(r) | {a})
            body = act(swap(b, b2), body)
            b = b2
        return All(b, subst_formula(body, a, r))
    raise TypeError(f"not a formula: {phi!r}")


def alpha_eq(phi: Formula, psi: Formula) -> bool:
    """Alpha-equivalence, deciding binders at a common fresh atom."""
    if type(phi) is not type(psi):
        return False
    if isinstance(phi, Bot):
        return True
    if isinstance(phi, (Eq, Pred)):
        return phi == psi
    if isinstance(phi, And):
        return alpha_eq(phi.lhs, psi.lhs) and alpha_eq(phi.rhs, psi.rhs)
    if isinstance(phi, Neg):
        return alpha_eq(phi.body, psi.body)
    if isinstance(phi, All):
        if free_atoms(phi) != free_atoms(psi):
            return False
        if phi.binder == psi.binder:
            return alpha_eq(phi.body, psi.body)
        c = fresh(free_atoms(phi.body) | free_atoms(psi.body) | {phi.binder, psi.binder})
        return alpha_eq(act(swap(c, phi.binder), phi.body), act(swap(c, psi.binder), psi.body))
    raise TypeError(f"not a formula: {phi!r}")


def alpha_key(phi: Formula) -> str:
    """A string key equal on exactly the alpha-equivalence class of phi."""
    parts: list[str] = []

    def term(t: Term, env: dict[Atom, int]) -> None:
        if isinstance(t, Var):
            i = env.get(t.atom)
            parts.append(f"b{i}" if i is not None else f"f{t.atom.id}")
        else:
            parts.append(t.fn)
            parts.append("(")
            for s in t.args:
                term(s, env)
                parts.append(",")
            parts.append(")")

    def go(f: Formula, env: dict[Atom, int], depth: int) -> None:
        if isinstance(f, Bot):
            parts.append("F")
        elif isinstance(f, Eq):
            parts.append("=")
            term(f.lhs, env)
            parts.append(",")
            term(f.rhs, env)
        elif isinstance(f, Pred):
            parts.append("@" + f.name)
            parts.append("(")
            for t in f.args:
                term(t, env)
                parts.append(",")
            parts.append(")")
        elif isinstance(f, And):
            parts.append("&(")
            go(f.lhs, env, depth)
            parts.append(")(")
            go(f.rhs, env, depth)
            parts.append(")")
        elif isinstance(f, Neg):
            parts.append("!(")
            go(f.body, env, depth)
            parts.append(")")
        elif isinstance(f, All):
            parts.append("A(")
            env2 = dict(env)
            env2[f.binder] = depth
            go(f.body, env2, depth + 1)
            parts.append(")")
        else:
            raise TypeError(f"not a formula: {f!r}")

    go(phi, {}, 0)
    return "".join(parts)


# ------------------------------------------------------------ printing

# precedence levels: forall 0 < eq 1 < and 4 < neg 5 < atomic 6
def _term_str(t: Term) -> str:
    if isinstance(t, Var):
        return t.atom.name
    if not t.args:
        return t.fn
    return f"{t.fn}({', '.join(_term_str(s) for s in t.args)})"


def pretty_term(t: Term) -> str:
    return _term_str(t)


def _level(phi: Formula) -> int:
    if isinstance(phi, All):
        return 0
    if isinstance(phi, Eq):
        return 1
    if isinstance(phi, And):
        return 4
    if isinstance(phi, Neg):
        return 5
    return 6


def _pp(phi: Formula, min_level: int) -> str:
    if isinstance(phi, Bot):
        s = "bottom"
    elif isinstance(phi, Pred):
        s = f"{phi.name}({', '.join(map(_term_str, phi.args))})" if phi.args else phi.name
    elif isinstance(phi, Eq):
        s = f"{_term_str(phi.lhs)} = {_term_str(phi.rhs)}"
    elif isinstance(phi, And):
        s = f"{_pp(phi.lhs, 4)} /\\ {_pp(phi.rhs, 5)}"
    elif isinstance(phi, Neg):
        s = f"~{_pp(phi.body, 5)}"
    elif isinstance(phi, All):
        s = f"forall {phi.binder.name}. {_pp(phi.body, 0)}"
    else:
        raise TypeError(f"not a formula: {phi!r}")
    if _level(phi) < min_level:
        return f"({s})"
    return s


def pretty(phi: Formula) -> str:
    return _pp(phi, 0)


# ------------------------------------------------------------- parsing

_TOKEN = re.compile(
    r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<comma>,)|(?P<dot>\.)"
    r"|(?P<and>/\\)|(?P<or>\\/)|(?P<iff><->)|(?P<imp>->)|(?P<neg>~)|(?P<eq>=)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*))"
)

_KEYWORDS = ("forall", "bottom", "top")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.toks: list[tuple[str, str, int]] = []
        while self.pos < len(text):
            if text[self.pos :].strip() == "":
                break
            m = _TOKEN.match(text, self.pos)
            if m is None or m.end() == self.pos:
                raise SyntaxError_(f"unexpected character at {self.pos}: {text[self.pos]!r}")
            kind = m.lastgroup
            val = m.group(m.lastgroup)
            if kind == "ident" and val in _KEYWORDS:
                kind = val
            self.toks.append((kind, val, m.start(m.lastgroup)))
            self.pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("eof", "", len(self.text))

    def next(self) -> tuple[str, str, int]:
        t = self.peek()
        self.i += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.next()
        if t[0] != kind:
            raise SyntaxError_(f"expected {kind} at position {t[2]}, got {t[1]!r}")
        return t


def build_atom_map(texts: Iterable[str], sig: Signature) -> dict[str, int]:
    """One name-to-atom assignment shared by several pieces of text.

    Canonical names aK map to K; other undeclared identifiers get the
    lowest unused indices in order of first appearance.
    """
    names: list[str] = []
    for text in texts:
        for kind, val, _ in _Lexer(text).toks:
            if kind == "ident" and sig.fun_arity(val) is None \
                    and sig.pred_arity(val) is None:
                names.append(val)
    mapping: dict[str, int] = {}
    used: set[int] = set()
    for n in names:
        m = re.fullmatch(r"a(\d+)", n)
        if m and n not in mapping:
            mapping[n] = int(m.group(1))
            used.add(int(m.group(1)))
    nxt = 0
    for n in names:
        if n not in mapping:
            while nxt in used:
                nxt += 1
            mapping[n] = nxt
            used.add(nxt)
    return mapping


class _Parser:
    """Precedence: ~ > /\\ > \\/ > -> > <-> > forall; forall extends right."""

    def __init__(self, text: str, sig: Signature,
                 atom_map: dict[str, int] | None = None):
        self.lx = _Lexer(text)
        self.sig = sig
        if atom_map is None:
            atom_map = build_atom_map([text], sig)
        self.atom_ids = dict(atom_map)

    def _undeclared(self, name: str) -> bool:
        return self.sig.fun_arity(name) is None and self.sig.pred_arity(name) is None

    def _atom(self, name: str) -> Atom:
        if name not in self.atom_ids:
            nxt = 0
            while nxt in set(self.atom_ids.values()):
                nxt += 1
            self.atom_ids[name] = nxt
        return Atom(self.atom_ids[name])

    def term(self) -> Term:
        kind, val, pos = self.lx.next()
        if kind != "ident":
            raise SyntaxError_(f"expected a term at position {pos}, got {val!r}")
        ar = self.sig.fun_arity(val)
        if ar is None:
            if self.sig.pred_arity(val) is not None:
                raise SyntaxError_(f"predicate symbol {val!r} used as a term at {pos}")
            return Var(self._atom(val))
        args = self._args(val, ar, pos)
        return App(val, args)

    def _args(self, name: str, arity: int, pos: int) -> tuple[Term, ...]:
        args: list[Term] = []
        if self.lx.peek()[0] == "lpar":
            self.lx.next()
            if self.lx.peek()[0] != "rpar":
                args.append(self.term())
                while self.lx.peek()[0] == "comma":
                    self.lx.next()
                    args.append(self.term())
            self.lx.expect("rpar")
        if len(args) != arity:
            raise SyntaxError_(f"{name!r} has arity {arity}, got {len(args)} args at {pos}")
        return tuple(args)

    def formula(self) -> Formula:
        return self.iff_()

    def iff_(self) -> Formula:
        lhs = self.imp_()
        if self.lx.peek()[0] == "iff":
            self.lx.next()
            return Iff(lhs, self.iff_())
        return lhs

    def imp_(self) -> Formula:
        lhs = self.or_()
        if self.lx.peek()[0] == "imp":
            self.lx.next()
            return Imp(lhs, self.imp_())
        return lhs

    def or_(self) -> Formula:
        out = self.and_()
        while self.lx.peek()[0] == "or":
            self.lx.next()
            out = Or(out, self.and_())
        return out

    def and_(self) -> Formula:
        out = self.unary()
        while self.lx.peek()[0] == "and":
            self.lx.next()
            out = And(out, self.unary())
        return out

    def unary(self) -> Formula:
        kind, val, pos = self.lx.peek()
        if kind == "neg":
            self.lx.next()
            return Neg(self.unary())
        if kind == "forall":
            self.lx.next()
            k2, v2, p2 = self.lx.expect("ident")
            if not self._undeclared(v2):
                raise SyntaxError_(f"binder {v2!r} clashes with a signature symbol at {p2}")
            a = self._atom(v2)
            self.lx.expect("dot")
            return All(a, self.formula())
        return self.atomic()

    def atomic(self) -> Formula:
        kind, val, pos = self.lx.peek()
        if kind == "lpar":
            self.lx.next()
            out = self.formula()
            self.lx.expect("rpar")
            return out
        if kind == "bottom":
            self.lx.next()
            return BOT
        if kind == "top":
            self.lx.next()
            return TOP
        if kind == "ident" and self.sig.pred_arity(val) is not None:
            self.lx.next()
            args = self._args(val, self.sig.pred_arity(val), pos)
            return Pred(val, args)
        # otherwise it must start a term equation
        lhs = self.term()
        self.lx.expect("eq")
        rhs = self.term()
        return Eq(lhs, rhs)

    def done(self) -> None:
        t = self.lx.peek()
        if t[0] != "eof":
            raise SyntaxError_(f"trailing input at position {t[2]}: {t[1]!r}")


def parse_formula(text: str, sig: Signature,
                  atom_map: dict[str, int] | None = None) -> Formula:
    p = _Parser(text, sig, atom_map)
    out = p.formula()
    p.done()
    return out


def parse_term(text: str, sig: Signature,
               atom_map: dict[str, int] | None = None) -> Term:
    p = _Parser(text, sig, atom_map)
    out = p.term()
    p.done()
    return out


# ------------------------------------------------------------- sampling

def random_term(sig: Signature, rng, pool: tuple[Atom, ...], depth: int) -> Term:
    funs = [f for f in sig.functions if depth > 0 or f[1] == 0]
    if depth <= 0 or not funs or rng.random() < 0.45:
        return Var(rng.choice(pool))
    name, ar = rng.choice(funs)
    return App(name, tuple(random_term(sig, rng, pool, depth - 1) for _ in range(ar)))


def random_formula(sig: Signature, rng, pool: tuple[Atom, ...], depth: int) -> Formula:
    if depth <= 0:
        kinds = ["bot", "pred", "eq"]
    else:
        kinds = ["pred", "eq", "and", "neg", "all", "pred", "and", "neg", "all"]
    kind = rng.choice(kinds)
    if kind == "bot":
        return BOT
    if kind == "eq":
        td = max(depth - 1, 0)
        return Eq(random_term(sig, rng, pool, td), random_term(sig, rng, pool, td))
    if kind == "pred":
        if not sig.predicates:
            return BOT
        name, ar = rng.choice(sig.predicates)
        td = max(depth - 1, 0)
        return Pred(name, tuple(random_term(sig, rng, pool, td) for _ in range(ar)))
    if kind == "and":
        return And(random_formula(sig, rng, pool, depth - 1), random_formula(sig, rng, pool, depth - 1))
    if kind == "neg":
        return Neg(random_formula(sig, rng, pool, depth - 1))
    return All(rng.choice(pool), random_formula(sig, rng, pool, depth - 1))


def default_signature() -> Signature:
    return Signature(
        functions=(("c", 0), ("f", 1), ("g", 2)),
        predicates=(("P", 1), ("Q", 2), ("R", 0)),
    )
