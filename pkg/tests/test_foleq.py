import itertools
import random

from nomfol.nominal import Perm, act, atoms, fresh, support, swap
from nomfol.foleq import (foleq_axiom_suite, freshmeet_char_check,
                          interpret, interpret_term, sequent_valid)
from nomfol.samplers import tarski_foleq_sampler
from nomfol.sigma import sim_subst
from nomfol.syntax import (All, And, BOT, Eq, Neg, Pred, Signature, Var,
                           default_signature, free_atoms, random_formula,
                           random_term, subst_formula)
from nomfol.tarski import (OrdinaryModel, TableFun, lift_interpretation,
                           random_model, random_tablefun, tarski_algebra,
                           tf_atm, tf_const, tf_eq, tf_subst)

a, b, c3, d = atoms(0, 1, 2, 3)
sig1 = Signature((), (("P", 1),))
N2 = OrdinaryModel(sig1, 2, {}, {"P": (False, True)})
I2 = lift_interpretation(N2)
sig = default_signature()


def test_interpret_examples():
    alg = I2.algebra
    assert interpret(BOT, I2) == alg.bot
    assert interpret(Neg(BOT), I2) == alg.top
    # forall a. P(a) with P true exactly at 1: constant bottom
    assert interpret(All(a, Pred("P", (Var(a),))), I2) == tf_const(2, False)


def test_sequent_valid_examples():
    phi = Pred("P", (Var(a),))
    assert sequent_valid([phi], [phi], I2)
    assert sequent_valid([BOT], [], I2)
    assert not sequent_valid([], [phi], I2)
    assert sequent_valid([], [], I2) is False  # top <= bot fails on k=2


def test_foleq_suite_all_k():
    for k in (1, 2, 3):
        rep = foleq_axiom_suite(tarski_algebra(k), tarski_foleq_sampler(k),
                                200, seed=30 + k)
        assert rep.ok, f"k={k}\n" + "\n".join(rep.lines())


def test_freshmeet_char_check():
    alg = tarski_algebra(2)
    rng = random.Random(31)
    pool = atoms(0, 1, 2)
    x = random_tablefun(2, rng, pool, outputs=None)
    # atm(a) is always a sound candidate: x[a := a] = x
    assert freshmeet_char_check(alg, x, a, [tf_atm(2, a)])
    consts = [tf_const(2, v) for v in range(2)]
    assert freshmeet_char_check(alg, x, a, consts, exact=True)
    y = random_tablefun(2, rng, (b,), outputs=None)
    assert freshmeet_char_check(alg, y, a, consts, exact=True)  # a # y


def test_sub_commute_300():
    rng = random.Random(32)
    pool = atoms(0, 1, 2)
    for i in range(300):
        k = rng.choice((1, 2, 3))
        N = random_model(sig, k, rng)
        I = lift_interpretation(N)
        phi = random_formula(sig, rng, pool, 3)
        r = random_term(sig, rng, pool, 2)
        q = rng.choice(pool)
        lhs = interpret(subst_formula(phi, q, r), I)
        rhs = I.algebra.subst(interpret(phi, I), q, interpret_term(r, I))
        assert lhs == rhs, (i, phi, q, r)


def test_interpret_term_sub_commute():
    rng = random.Random(33)
    pool = atoms(0, 1, 2)
    for _ in range(200):
        k = rng.choice((2, 3))
        N = random_model(sig, k, rng)
        I = lift_interpretation(N)
        t = random_term(sig, rng, pool, 3)
        r = random_term(sig, rng, pool, 2)
        q = rng.choice(pool)
        from nomfol.syntax import subst_term
        lhs = interpret_term(subst_term(t, q, r), I)
        rhs = tf_subst(interpret_term(t, I), q, interpret_term(r, I))
        assert lhs == rhs


def test_interpretation_equivariance_sampled():
    rng = random.Random(34)
    for _ in range(100):
        k = rng.choice((2, 3))
        N = random_model(sig, k, rng)
        I = lift_interpretation(N)
        ids = list(range(6))
        rng.shuffle(ids)
        pi = Perm({atoms(i)[0]: atoms(j)[0] for i, j in enumerate(ids)})
        for name, ar in sig.predicates:
            args = atoms(*range(ar))
            assert act(pi, I.pred_interp(name, args)) == \
                I.pred_interp(name, tuple(pi(q) for q in args))
        for name, ar in sig.functions:
            args = atoms(*range(ar))
            assert act(pi, I.fun_interp(name, args)) == \
                I.fun_interp(name, tuple(pi(q) for q in args))


def test_fresh_choice_independence():
    # evaluating a symbol at different fresh tuples and substituting back
    # agrees with the interpreter's canonical choice
    rng = random.Random(35)
    N = random_model(sig, 2, rng)
    I = lift_interpretation(N)
    alg = I.algebra
    r1 = random_term(sig, rng, (a, b), 2)
    r2 = random_term(sig, rng, (a, b), 2)
    us = [interpret_term(r1, I), interpret_term(r2, I)]
    via_interp = interpret(Pred("Q", (r1, r2)), I)
    for names in [(c3, d), (d, atoms(9)[0]), (atoms(7)[0], atoms(8)[0])]:
        if any(q in support(us[0]) | support(us[1]) for q in names):
            continue
        base = I.pred_interp("Q", names)
        out = base
        for q, u in zip(names, us):
            out = alg.subst(out, q, u)
        assert out == via_interp


def test_equality_element_unique():
    # every truth table over {a, b} satisfying both equality laws against
    # sampled arguments is the diagonal
    alg = tarski_algebra(2)
    rng = random.Random(36)
    diagonal = tf_eq(tf_atm(2, a), tf_atm(2, b))
    args = [tf_atm(2, a), tf_atm(2, b), tf_atm(2, c3),
            tf_const(2, 0), tf_const(2, 1)]
    zs = [random_tablefun(2, rng, (a, b, c3), outputs=None) for _ in range(8)]
    survivors = []
    for table in itertools.product((False, True), repeat=4):
        from nomfol.tarski import tf_canonicalise
        e = tf_canonicalise(TableFun(2, (a, b), table))
        ok = all(sim_subst(alg, e, [(a, u), (b, u)]) == alg.top for u in args)
        if ok:
            for u in args:
                for v in args:
                    euv = sim_subst(alg, e, [(a, u), (b, v)])
                    for z in zs:
                        if alg.meet(euv, alg.subst(z, a, u)) != \
                                alg.meet(euv, alg.subst(z, a, v)):
                            ok = False
        if ok:
            survivors.append(e)
    assert survivors == [diagonal]


def test_freshwedgeo_direction():
    # the fresh-limit is below every fresh renaming of its body
    rng = random.Random(37)
    pool = atoms(0, 1, 2)
    alg = tarski_algebra(2)
    for _ in range(200):
        x = random_tablefun(2, rng, pool, outputs=None)
        q = rng.choice(pool)
        w = fresh(support(x) | {q})
        fm = alg.freshmeet(q, x)
        assert alg.leq(fm, act(swap(w, q), x))
        assert alg.leq(fm, x)


def test_supp_freshwedge():
    rng = random.Random(38)
    pool = atoms(0, 1, 2, 3)
    alg = tarski_algebra(2)
    for _ in range(200):
        x = random_tablefun(2, rng, pool, outputs=None)
        q = rng.choice(pool)
        assert support(alg.freshmeet(q, x)) <= support(x) - {q}
        assert support(alg.neg(x)) == support(x)


# ---------------------------------------------------- rule-local soundness

def _random_sequents(rng, pool, n, shared=False):
    out = []
    for _ in range(n):
        left = [random_formula(sig, rng, pool, 2) for _ in range(rng.randint(0, 2))]
        right = [random_formula(sig, rng, pool, 2) for _ in range(rng.randint(0, 2))]
        if shared and rng.random() < 0.7:
            chi = random_formula(sig, rng, pool, 2)
            left.append(chi)
            right.append(chi)
        out.append((left, right))
    return out


def _valid(left, right, I):
    return sequent_valid(left, right, I)


def _models(rng, count=20):
    return [lift_interpretation(random_model(sig, rng.randint(1, 3), rng))
            for _ in range(count)]


def test_rule_local_soundness():
    rng = random.Random(39)
    pool = atoms(0, 1, 2)
    interps = _models(rng, 10)
    cases = _random_sequents(rng, pool, 60, shared=True)
    for left, right in cases:
        phi = random_formula(sig, rng, pool, 2)
        psi = random_formula(sig, rng, pool, 2)
        r = random_term(sig, rng, pool, 1)
        r2 = random_term(sig, rng, pool, 1)
        q = rng.choice(pool)
        for I in rng.sample(interps, 3):
            # hyp and botL conclusions are valid outright
            assert _valid(left + [phi], [phi] + right, I)
            assert _valid(left + [BOT], right, I)
            # andL
            if _valid(left + [phi, psi], right, I):
                assert _valid(left + [And(phi, psi)], right, I)
            # andR
            if _valid(left, [phi] + right, I) and _valid(left, [psi] + right, I):
                assert _valid(left, [And(phi, psi)] + right, I)
            # negL / negR
            if _valid(left, [psi] + right, I):
                assert _valid(left + [Neg(psi)], right, I)
            if _valid(left + [phi], right, I):
                assert _valid(left, [Neg(phi)] + right, I)
            # allL
            if _valid(left + [subst_formula(phi, q, r)], right, I):
                assert _valid(left + [All(q, phi)], right, I)
            # allR with its side condition
            ctx_atoms = frozenset()
            for f in left + right:
                ctx_atoms |= free_atoms(f)
            w = q if q not in ctx_atoms else fresh(ctx_atoms | free_atoms(phi))
            body = act(swap(w, q), phi) if w != q else phi
            if _valid(left, [body] + right, I):
                assert _valid(left, [All(w, body)] + right, I)
            # eqR
            if _valid(left + [Eq(r, r)], right, I):
                assert _valid(left, right, I)
            # eqL
            eqn = Eq(r2, r)
            if _valid(left + [eqn, subst_formula(phi, q, r2)], right, I):
                assert _valid(left + [eqn, subst_formula(phi, q, r)], right, I)


def test_denotation_support_within_free_atoms():
    # the denotation's support is bounded by the formula's free atoms
    rng = random.Random(44)
    pool = atoms(0, 1, 2)
    for _ in range(200):
        N = random_model(sig, rng.randint(1, 3), rng)
        I = lift_interpretation(N)
        phi = random_formula(sig, rng, pool, 3)
        assert support(interpret(phi, I)) <= free_atoms(phi)
        t = random_term(sig, rng, pool, 3)
        from nomfol.syntax import free_atoms_term
        assert support(interpret_term(t, I)) <= free_atoms_term(t)


def test_applied_symbol_substitution():
    # substituting into an applied symbol equals applying to substituted
    # arguments, for functions, predicates and equality
    rng = random.Random(45)
    pool = atoms(0, 1, 2)
    for _ in range(150):
        k = rng.choice((2, 3))
        N = random_model(sig, k, rng)
        I = lift_interpretation(N)
        alg = I.algebra
        us = [interpret_term(random_term(sig, rng, pool, 2), I) for _ in range(2)]
        w = interpret_term(random_term(sig, rng, pool, 1), I)
        q = rng.choice(pool)
        from nomfol.foleq import _extend
        for name, build in [("Q", lambda vs: _extend(alg, lambda ns: I.pred_interp("Q", ns), vs)),
                            ("g", lambda vs: _extend(alg.termlike, lambda ns: I.fun_interp("g", ns), vs))]:
            lhs = alg.subst(build(us), q, w) if name == "Q" else \
                tf_subst(build(us), q, w)
            rhs = build([tf_subst(u, q, w) for u in us])
            assert lhs == rhs, name
        lhs = alg.subst(alg.eq(us[0], us[1]), q, w)
        rhs = alg.eq(tf_subst(us[0], q, w), tf_subst(us[1], q, w))
        assert lhs == rhs


def test_freshmeet_lower_bound_for_arbitrary_instances():
    # the fresh limit sits below every substitution instance, not just
    # the constant ones
    rng = random.Random(46)
    pool = atoms(0, 1, 2, 3)
    for _ in range(200):
        k = rng.choice((2, 3))
        alg = tarski_algebra(k)
        x = random_tablefun(k, rng, pool, outputs=None)
        q = rng.choice(pool)
        us = [random_tablefun(k, rng, pool, outputs=k) for _ in range(4)]
        from nomfol.foleq import freshmeet_char_check
        assert freshmeet_char_check(alg, x, q, us)
