import subprocess
import sys
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def tagcalc(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "tagcalc", *map(str, args)], capture_output=True, text=True, cwd=cwd, timeout=120
    )


def test_unify():
    r = tagcalc("unify", "x -> x", "(y -> z) -> z")
    assert r.returncode == 0 and r.stdout.strip() == "not unifiable"
    r = tagcalc("unify", "x -> y", "u -> v")
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "unifiable"
    r = tagcalc("unify", "x", "x -> x", "--apart")
    assert "x := x_1 -> x_1" in r.stdout


def test_tag_run():
    r = tagcalc("tag", "run", DATA / "t1.tag", "aaa")
    assert r.returncode == 0
    assert r.stdout.split() == ["aaa", "aab", "bab", "bb", "b", "HALTED"]
    r = tagcalc("tag", "run", DATA / "t2.tag", "aa", "--fuel", "3")
    assert r.stdout.split() == ["aa"] * 4 + ["FUEL", "EXHAUSTED"]


def test_encode_and_build(tmp_path):
    r = tagcalc("encode", "abc")
    assert [ln.split(":")[0] for ln in r.stdout.splitlines()] == ["type 0", "type 1(2,1)"]
    out = tmp_path / "c.calc"
    r = tagcalc("build", DATA / "t1.tag", "aaa", "--p0", "cl_impl", "-o", out)
    assert r.returncode == 0 and "19 axioms" in r.stdout
    assert len(out.read_text().splitlines()) == 20


def test_prove_then_check_in_fresh_process(tmp_path):
    r = tagcalc("prove", DATA / "t1.tag", "aaa", "--p0", "cl_impl", "--out", tmp_path)
    assert r.returncode == 0, r.stderr
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["a1.proof", "a2.proof", "peirce.proof", "t1_aaa_cl_impl.calc", "trace.proof"]
    for proof in tmp_path.glob("*.proof"):
        r = tagcalc("check", proof)
        assert r.returncode == 0 and r.stdout.strip() == "valid", (proof, r.stdout, r.stderr)
    # a tampered proof fails with exit status 2
    bad = tmp_path / "peirce.proof"
    lines = bad.read_text().splitlines()
    k, op, major, minor = lines[-2].split()
    assert op == "MP"
    lines[-2] = f"{k} MP {minor} {major}"
    bad.write_text("\n".join(lines) + "\n")
    r = tagcalc("check", bad)
    assert r.returncode == 2 and r.stdout.startswith("invalid")


def test_check_against_builtin(tmp_path):
    proof = tmp_path / "id.proof"
    proof.write_text("proof over int_impl\n0: AX A1\n1: SUB 0 {y:=x}\n2: AX A1\n3: SUB 2 {y:=x -> x}\n"
                     "4: AX A2\n5: SUB 4 {y:=x -> x; z:=x}\n6: MP 5 3\n7: MP 6 1\nqed 7\n")
    r = tagcalc("check", proof)
    assert r.returncode == 0, r.stdout + r.stderr
    proof.write_text("proof over int_impl\n0: AX A1\n1: MP 0 0\nqed 1\n")
    r = tagcalc("check", proof)
    assert r.returncode == 2 and "premise-mismatch" in r.stdout


def test_prove_non_halting(tmp_path):
    r = tagcalc("prove", DATA / "t2.tag", "aa", "--out", tmp_path, "--fuel", "20")
    assert r.returncode == 2 and not list(tmp_path.iterdir())


def test_roundtrip():
    r = tagcalc("roundtrip", DATA / "t1.tag", "aaa", "--p0", "cl_impl", "-v")
    assert r.returncode == 0, r.stdout
    assert "HALTS after 4 steps at 'b'" in r.stdout
    assert "height 4: decoded word b reachable" in r.stdout
    assert "0 violations, disjoint" in r.stdout
    assert "scheme 0 depth 0: CODE word=aaa type=0" in r.stdout
    r = tagcalc("roundtrip", DATA / "t2.tag", "aa", "--fuel", "50")
    assert r.returncode == 0
    assert "NO HALT" in r.stdout and "no short-word code" in r.stdout


def test_saturate():
    r = tagcalc("saturate", "int_impl", "--depth", "0")
    assert r.stdout.splitlines()[-1] == "2 schemes, depth 0, depth bound"


@pytest.mark.parametrize(
    "args",
    [(), ("bogus",), ("unify", "x ->", "y"), ("tag", "run", "missing.tag", "a"), ("build", DATA / "t1.tag", "ac")],
)
def test_usage_errors(args):
    assert tagcalc(*args).returncode == 1
