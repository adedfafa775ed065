"""Acceptance gate: one test per criterion, each with its own runtime budget."""
import io
import json
import random
import time
from contextlib import contextmanager, redirect_stdout

import numpy as np
import pytest

from zdense import cli
from zdense.decision import decide, decide_unipotent_complex
from zdense.group_spec import FieldDesc, Solvable, TorusPart, UnipotentPart, WeightAction
from zdense.laurent_witt.gallery import ex1_frobenius_coset_scan, ex3_scan
from zdense.laurent_witt.witt import F_integer_check, WittVector2
from zdense.number_construct import construct, construction_generators, field_norm
from zdense.serialize import load_spec
from zdense.verify import (
    GeneratorSet,
    density_check,
    discreteness_margin,
    identity_word_search,
    lift_discrete_dense,
    pingpong_certificate,
    projection_injectivity,
)

from .conftest import SPECS


@contextmanager
def budget(seconds: float):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    print(f"elapsed {elapsed:.3f} s (budget {seconds} s)")
    assert elapsed < seconds, f"took {elapsed:.2f} s, budget {seconds} s"


def run_cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.run(argv)
    return code, buf.getvalue()


@pytest.mark.acceptance(1, title="sec8 counterexample: NotExists via Prop3, G' dim 4, G'' = span{z} weight 2")
def test_criterion_1_sec8():
    with budget(1.0):
        code, out = run_cli(["decide", str(SPECS / "sec8.json"), "--field", "R"])
    assert code == 1
    res = json.loads(out)["result"]
    assert res["status"] == "NotExists"
    assert "Prop3" in res["citations"]
    series = res["evidence"]["derived_series"]
    g1, g2 = series[1], series[2]
    assert g1["dim"] == 4 and not g1["torus"]
    assert g2["dim"] == 1 and g2["basis"] == ["z"]
    assert g2["weight"] == [2] and g2["central"] is False
    ob = res["evidence"]["obstruction"]
    assert ob["subgroup"] == "span{z}" and ob["weight"] == [2] and not ob["central"]


@pytest.mark.acceptance(2, title="ex5: unimodular yet NotExists, also under --strict-paper")
def test_criterion_2_ex5():
    with budget(1.0):
        code, out = run_cli(["decide", str(SPECS / "ex5.json"), "--field", "C"])
        code_s, out_s = run_cli(["decide", str(SPECS / "ex5.json"), "--field", "C", "--strict-paper"])
    for c, o in ((code, out), (code_s, out_s)):
        res = json.loads(o)["result"]
        assert c == 1 and res["status"] == "NotExists"
        assert dict((d["name"], d["pass"]) for d in res["conditions"])["unimodular"] is True
        assert any(cite.startswith("Ex5") for cite in res["citations"])
    assert "Ex5-rule (extension)" in json.loads(out)["result"]["citations"]


@pytest.mark.acceptance(3, title="Borel rules: simple Borel NotExists; x^3-x-1 gives the SL2xSL2 Borel, |det| = theta^(1/2)")
def test_criterion_3_borel(tmp_path):
    with budget(5.0):
        code, out = run_cli(["decide", str(SPECS / "borel_simple.json"), "--field", "C"])
        assert code == 1
        res = json.loads(out)["result"]
        assert res["status"] == "NotExists" and "Borel-Cor" in res["citations"]

        gens_path = tmp_path / "gens.json"
        code, out = run_cli(["construct", "--poly", "x^3-x-1", "-o", str(gens_path)])
        assert code == 0
        doc = json.loads(gens_path.read_text())
    assert doc["identified_as"] == "Borel group in SL2(C)xSL2(C)"
    assert doc["m"] == 2
    roots = np.roots([1, 0, -1, -1])
    theta = float(roots[np.argmin(np.abs(roots.imag))].real)
    assert abs(theta - 1.32471795) < 1e-8
    det = float(doc["det_abs"][0])
    assert abs(det - theta**0.5) < 1e-6
    assert abs(det - 1.1510) < 1e-4
    assert abs(det - 1) > 0.1  # non-unimodular


def _commutative(gi, gc, gu):
    return Solvable(TorusPart(gi, gc), UnipotentPart(gu), WeightAction([[0] * gi for _ in range(gu)]))


@pytest.mark.acceptance(4, title="p-adic classification on 20 commutative specs; noncommutative -> Prop5")
def test_criterion_4_padic():
    shapes = [(gi, gc, gu) for gi in range(5) for gc, gu in ((0, 0), (1, 1), (0, 2), (1, 3))]
    assert len(shapes) == 20
    with budget(1.0):
        field = FieldDesc.padic(5)
        for gi, gc, gu in shapes:
            v = decide(_commutative(gi, gc, gu), field)
            expected = (gi + gu > 0) and gi >= max(1, gu)
            assert (v.status == "Exists") == expected, (gi, gc, gu, v.status)
            assert v.status in ("Exists", "NotExists")
        for name in ("heisenberg", "heisenberg_graded", "sec8", "ex5", "borel_sl2xsl2"):
            spec = load_spec(SPECS / f"{name}.json")
            for p in (2, 3, 5, 7):
                v = decide(spec, FieldDesc.padic(p))
                assert v.status == "NotExists" and "Prop5" in v.citations, (name, p)


@pytest.mark.acceptance(5, title="Q(sqrt2): norm(1+theta) = -1, Delta det 1, density passes, margin(6, 10) > 1e-9")
def test_criterion_5_qsqrt2():
    with budget(60.0):
        assert field_norm([1, 1], [-2, 0, 1]) == -1
        cg, emb, _ = construct([-2, 0, 1])
        assert cg.cocompact_variant["delta_units"][0] == [3, 2]
        for d in cg.cocompact_variant["delta_dets"]:
            assert abs(complex(d) - 1) < 1e-12
        gens = construction_generators(cg, "cocompact")
        report = density_check(gens, load_spec(SPECS / "qsqrt2.json"))
        assert report.torus and report.translation and report.full_support
        margin = discreteness_margin(gens, 6, 10.0, cap=10_000_000)
        print("margin", margin.min_distance, margin.attained_word, margin.element_count)
        assert margin.min_distance > 1e-9


SANOV = [[[1, 2], [0, 1]], [[1, 0], [2, 1]]]


@pytest.mark.acceptance(6, title="Sanov pair certified, no identity word to length 12; lift injective to length 8, dense")
def test_criterion_6_pingpong_lift():
    with budget(120.0):
        A, B = SANOV
        assert pingpong_certificate(A, B).certified
        assert identity_word_search(A, B, 12) == []
        free = GeneratorSet.matrices(SANOV, labels=["A", "B"])
        lift = lift_discrete_dense(free, [[1, 0], [0, 1], [1j, 0], [0, 1j]])
        inj = projection_injectivity(lift, exhaustive_length=6, sample_length=8, sample_size=20000, seed=0)
        print(inj.to_json())
        assert inj.ok
        assert density_check(lift).passed


@pytest.mark.acceptance(7, title="Witt laws on 1e4 triples per p in {2,3,5}; p-fold sum; F integrality for p <= 13")
def test_criterion_7_witt():
    with budget(30.0):
        rng = random.Random(0)
        for p in (2, 3, 5):
            zero = WittVector2.zero(p)
            for _ in range(10_000):
                a, b, c = (WittVector2(rng.randrange(p), rng.randrange(p), p) for _ in range(3))
                assert ((a + b) + c).equals(a + (b + c))
                assert (a + b).equals(b + a)
                assert (a + (-a)).equals(zero) and (a + zero).equals(a)
                s = a
                for _ in range(p - 1):
                    s = s + a
                assert s.equals(WittVector2(0, pow(a.x0, p, p), p))
        for p in (2, 3, 5, 7, 11, 13):
            assert F_integer_check(p)


@pytest.mark.acceptance(8, title="ex3 at p=2, horizon 16: all solutions have valuation >= 0")
def test_criterion_8_ex3():
    with budget(30.0):
        r = ex3_scan(2, 16)
    assert r["verified"] and r["valuations_nonnegative"] and r["index_pattern_holds"]
    assert r["min_valuation"]["x"] >= 0 and r["min_valuation"]["y"] >= 0
    assert r["horizon"] == 16


@pytest.mark.acceptance(9, title="ex1 for p in {2,3}, horizon >= 3p: S-pairs in distinct Frobenius cosets")
def test_criterion_9_ex1():
    with budget(30.0):
        for p in (2, 3):
            for N in (3 * p, 4 * p, 5 * p):
                r = ex1_frobenius_coset_scan(p, N)
                assert r["verified"] and not r["failures"]
                assert r["pairs_checked"] == r["elements"] * (r["elements"] - 1) // 2
                assert r["distinct_cosets"] == r["elements"] > 1


@pytest.mark.acceptance(10, title="Malcev: Heisenberg over R Exists; complex unipotent examples Exists/Exists/Unknown")
def test_criterion_10_malcev():
    n = 3
    with budget(1.0):
        v = decide(load_spec(SPECS / "heisenberg.json"), FieldDesc.real())
        assert v.status == "Exists" and "Malcev" in v.citations

        gauss = UnipotentPart(2 * n)
        incl = [[(1 if j == i else 0, 0) for j in range(n)] for i in range(n)]
        incl += [[(0, 1 if j == i else 0) for j in range(n)] for i in range(n)]
        assert decide_unipotent_complex(gauss, incl, n).status == "Exists"

        real = UnipotentPart(n)
        ident = [[(1 if j == i else 0, 0) for j in range(n)] for i in range(n)]
        assert decide_unipotent_complex(real, ident, n).status == "Exists"

        short = UnipotentPart(n - 1)
        assert decide_unipotent_complex(short, ident[: n - 1], n).status == "Unknown"
