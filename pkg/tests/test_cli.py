import io
import os

from nomfol.cli import run

DATA = os.path.join(os.path.dirname(__file__), "data")
SIG = os.path.join(DATA, "p1.sig")
MODEL = os.path.join(DATA, "p1k2.model")


def go(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


def test_eval_golden():
    code, out = go("eval", "forall a. P(a)", "--sig", SIG, "--model", MODEL)
    assert code == 0
    assert out == "deps: []\ntable: [0]\nsupport: {}\n"
    code, out = go("eval", "P(a)", "--sig", SIG, "--model", MODEL)
    assert code == 0
    assert out == "deps: [a0]\ntable: [0 1]\nsupport: {a0}\n"
    code, out = go("eval", "bottom", "--sig", SIG, "--model", MODEL, "--machine")
    assert code == 0
    assert out == "DEPS\nTABLE 0\nSUPPORT\n"


def test_eval_errors():
    code, out = go("eval", "P(a", "--sig", SIG, "--model", MODEL)
    assert code == 64 and out.startswith("error:")
    code, out = go("eval", "P(a)", "--sig", SIG, "--model", "/nonexistent")
    assert code == 64


def test_prove_and_check_roundtrip(tmp_path):
    code, out = go("prove", "|- forall a. (P(a) \\/ ~ P(a))", "--sig", SIG,
                   "--depth", "6")
    assert code == 0 and out.startswith("(allR ")
    proof_file = tmp_path / "proof.sexp"
    proof_file.write_text(out)
    code, out = go("check", str(proof_file), "--sig", SIG)
    assert code == 0 and out == "OK\n"


def test_prove_unknown():
    code, out = go("prove", "|- P(a)", "--sig", SIG, "--depth", "5")
    assert code == 2 and out == "UNKNOWN\n"


def test_check_rejects_corrupted(tmp_path):
    good = go("prove", "|- forall a. (P(a) \\/ ~ P(a))", "--sig", SIG)[1]
    bad = good.replace("hyp", "botL", 1)
    proof_file = tmp_path / "bad.sexp"
    proof_file.write_text(bad)
    code, out = go("check", str(proof_file), "--sig", SIG)
    assert code == 1 and out.startswith("INVALID botL")
    proof_file.write_text("(hyp")
    code, out = go("check", str(proof_file), "--sig", SIG)
    assert code == 1 and out.startswith("PARSE-ERROR")


def test_countermodel_golden():
    code, out = go("countermodel", "|- P(a)", "--sig", SIG, "--max-k", "1")
    assert code == 0
    assert out == "domain 1\npred P : 0\n# valuation a0=0 default=0\n"
    code, out = go("countermodel", "P(a) |- P(a)", "--sig", SIG, "--max-k", "2")
    assert code == 2 and out == "UNKNOWN\n"


def test_countermodel_forall():
    code, out = go("countermodel", "|- forall a. P(a)", "--sig", SIG,
                   "--max-k", "2")
    assert code == 0
    assert "domain" in out and "pred P :" in out


def test_axioms_suites_small():
    for suite, n in [("sigma-terms", 40), ("sigma-tarski", 40),
                     ("amgis-pow", 15), ("foleq-tarski", 20),
                     ("eq-laws", 20), ("precedent", 1)]:
        code, out = go("axioms", suite, "--n", str(n), "--seed", "1")
        assert code == 0, (suite, out)
        assert all(line.startswith("AXIOM ") for line in out.strip().splitlines())
        assert " FAIL " not in out


def test_axioms_deterministic_and_jobs_invariant():
    a1 = go("axioms", "foleq-tarski", "--n", "15", "--seed", "3")
    a2 = go("axioms", "foleq-tarski", "--n", "15", "--seed", "3")
    a3 = go("axioms", "foleq-tarski", "--n", "15", "--seed", "3", "--jobs", "3")
    assert a1 == a2 == a3


def test_sketch_golden():
    code, out = go("sketch", "P(c)", "--steps", "3", "--depth", "5")
    assert code == 0
    assert out == ("STEP 0 PAIR (a0, P(a1)) SIDE filter\n"
                   "STEP 1 PAIR (a1, P(c)) SIDE filter\n"
                   "STEP 2 PAIR (a2, R) SIDE filter\n")


def test_usage_error():
    code, _ = go("bogus")
    assert code == 64
    code, _ = go("axioms", "no-such-suite")
    assert code == 64
