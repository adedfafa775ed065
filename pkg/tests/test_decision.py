import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zdense.decision import (
    EXISTS,
    NOT_EXISTS,
    UNKNOWN,
    Verdict,
    decide,
    decide_metabelian_complex,
    decide_nonsolvable_char0,
    decide_padic_solvable,
    decide_unipotent_complex,
    decide_unipotent_real,
    is_amenable,
    necessary_real_solvable,
    obstruction_one_dim_noncentral,
)
from zdense.errors import InvalidSpec, ShapeMismatch, WrongVariant
from zdense.group_spec import (
    BorelOf,
    FieldDesc,
    Levi,
    Semisimple,
    Solvable,
    TorusPart,
    UnipotentPart,
    WeightAction,
    validate_spec,
)
from zdense.serialize import load_spec
from zdense.verify import GeneratorSet, density_check, discreteness_margin

from .conftest import SPECS

R, C = FieldDesc.real(), FieldDesc.complex()


def spec(name):
    return load_spec(SPECS / f"{name}.json")


def solv(m, n, weights, brackets=(), anis=0, over_Q=True, comm_Q=True):
    return Solvable(TorusPart(m, anis), UnipotentPart(n, tuple(brackets), over_Q), WeightAction(weights), comm_Q)


def weights1(*ws):
    return solv(1, len(ws), [[w] for w in ws])


# ---------------------------------------------------------------- examples from the rule table


def test_decide_examples():
    v = decide(spec("semisimple_isotropic"), C)
    assert v.status == EXISTS and "ThmA" in v.citations and not v.constructive
    v = decide(spec("borel_simple"), C)
    assert v.status == NOT_EXISTS and "Borel-Cor" in v.citations
    v = decide(spec("sec8"), R)
    assert v.status == NOT_EXISTS and v.citations == ["Prop3"]
    assert v.exit_code == 1


def test_amenability():
    assert is_amenable(spec("heisenberg"), FieldDesc.padic(3)) is True
    assert is_amenable(spec("semisimple_isotropic"), R) is False
    assert is_amenable(spec("semisimple_anisotropic"), R) is True
    assert is_amenable(spec("semisimple_isotropic"), FieldDesc.laurent(3)) is None
    assert is_amenable(spec("sec8"), FieldDesc.laurent(3)) is True


def test_nonsolvable():
    levi = spec("sl2_c2")
    v = decide_nonsolvable_char0(levi, C)
    assert v.status == EXISTS and "Thm1" in v.citations and "Prop1" in v.citations
    assert v.constructive and v.witness["kind"] == "lift"
    aniso_levi = Levi(Semisimple(False, True), solv(0, 2, [[], []]))
    v = decide_nonsolvable_char0(aniso_levi, R)
    assert v.status == NOT_EXISTS and "Prop2-Cor" in v.citations
    assert decide_nonsolvable_char0(spec("semisimple_anisotropic"), R).status == NOT_EXISTS
    with pytest.raises(WrongVariant):
        decide_nonsolvable_char0(spec("sec8"), R)
    with pytest.raises(WrongVariant):
        decide_nonsolvable_char0(spec("semisimple_isotropic"), FieldDesc.laurent(2))


def test_padic():
    q5 = FieldDesc.padic(5)
    v = decide_padic_solvable(spec("padic_commutative_exists"), q5)
    assert v.status == EXISTS and v.witness["kind"] == "recipe" and v.witness["uniformizer"] == 5
    v = decide_padic_solvable(spec("padic_commutative_unipotent"), q5)
    assert v.status == NOT_EXISTS and "Cor3" in v.citations
    v = decide_padic_solvable(spec("heisenberg"), q5)
    assert v.status == NOT_EXISTS and "Prop5" in v.citations
    with pytest.raises(WrongVariant):
        decide_padic_solvable(spec("heisenberg"), R)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4), st.integers(0, 3), st.integers(0, 4), st.integers(1, 3), st.sampled_from([2, 3, 5, 7]))
def test_padic_anisotropic_monotone(gi, gc, gu, extra, p):
    base = decide(solv(gi, gu, [[0] * gi] * gu, anis=gc), FieldDesc.padic(p))
    more = decide(solv(gi, gu, [[0] * gi] * gu, anis=gc + extra), FieldDesc.padic(p))
    assert not (base.status == NOT_EXISTS and more.status == EXISTS)
    assert more.status == base.status


def test_unipotent():
    assert decide_unipotent_real(spec("heisenberg")).status == EXISTS
    assert decide_unipotent_real(solv(0, 3, [[]] * 3)).status == EXISTS
    approx = solv(0, 3, [[]] * 3, [(0, 1, 2, "~1.4142135")], over_Q=False)
    v = decide_unipotent_real(approx)
    assert v.status == UNKNOWN and any(ok for _, ok in v.conditions)
    with pytest.raises(WrongVariant):
        decide_unipotent_real(spec("sec8"))
    with pytest.raises(ShapeMismatch):
        decide_unipotent_complex(UnipotentPart(2), [[1, 0]], 2)
    v = decide_unipotent_complex(UnipotentPart(2), [[(1, 0), (0, 0)], [(0, 1), (0, 0)]], 2)
    assert v.status == UNKNOWN and v.evidence["complex_rank"] == 1


def test_obstruction_scan():
    hit = obstruction_one_dim_noncentral(spec("sec8"))
    assert hit["subgroup"] == "span{z}" and hit["weight"] == [2] and not hit["central"]
    assert obstruction_one_dim_noncentral(solv(1, 2, [[0], [0]])) is None
    assert obstruction_one_dim_noncentral(spec("heisenberg")) is None


def test_necessary_real():
    assert necessary_real_solvable(spec("sec8")).citations == ["Prop3"]
    v = necessary_real_solvable(weights1(1, 1))
    assert v.status == NOT_EXISTS and "Prop7" in v.citations
    v = necessary_real_solvable(solv(1, 2, [[1], [-1]], comm_Q=False))
    assert v.status == NOT_EXISTS and ("commutator group defined over Q", False) in v.conditions
    v = necessary_real_solvable(weights1(1, -1))
    assert v.status == UNKNOWN and all(ok for _, ok in v.conditions)


def test_metabelian_rules():
    v = decide_metabelian_complex(weights1(2, -1, -1))
    assert v.status == NOT_EXISTS and "Ex5-rule (extension)" in v.citations
    v = decide_metabelian_complex(weights1(1, -1))
    assert v.status == EXISTS and v.witness["poly"] == [-2, 0, 1]
    v = decide_metabelian_complex(weights1(3, -1))
    assert v.status == NOT_EXISTS and v.citations == ["Prop9"]
    # repeated weights: the extension fires, strict mode stays silent
    v = decide_metabelian_complex(weights1(3, -1, -1))
    assert v.status == NOT_EXISTS and v.citations == ["Ex5-rule (extension)"]
    v = decide_metabelian_complex(weights1(3, -1, -1), strict_paper=True)
    assert v.status == UNKNOWN
    assert decide_metabelian_complex(weights1(2, -1, -1), strict_paper=True).citations == ["Ex5"]
    # unimodular and unmatched
    assert decide_metabelian_complex(weights1(2, 1, -3), with_witness=False).status == UNKNOWN
    with pytest.raises(WrongVariant):
        decide_metabelian_complex(weights1(0, 1))


def test_positive_characteristic_and_invalid():
    for name in ("sec8", "heisenberg", "semisimple_isotropic", "borel_simple"):
        v = decide(spec(name), FieldDesc.laurent(3))
        assert v.status == UNKNOWN and v.citations == ["char>0 partial results"]
    with pytest.raises(InvalidSpec):
        decide(solv(1, 3, [[1], [1], [3]], [(0, 1, 2, 1)]), C)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(EXISTS)
    with pytest.raises(ValueError):
        Verdict(UNKNOWN, ["x"], [("c", False)])
    d = Verdict(NOT_EXISTS, ["Prop3"], [("c", True)]).to_json()
    assert d["conditions"] == [{"name": "c", "pass": True}] and "witness" not in d


# ---------------------------------------------------------------- properties


nonzero = st.integers(-3, 3).filter(bool)


@settings(max_examples=150, deadline=None)
@given(st.lists(nonzero, min_size=1, max_size=4), st.booleans())
def test_weight_negation_invariance_rank_one(ws, strict):
    a = decide_metabelian_complex(weights1(*ws), strict, with_witness=False)
    b = decide_metabelian_complex(weights1(*[-w for w in ws]), strict, with_witness=False)
    assert (a.status, a.citations) == (b.status, b.citations)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(any), min_size=1, max_size=3))
def test_weight_negation_invariance_rank_two(ws):
    s1 = solv(2, len(ws), [list(w) for w in ws])
    s2 = solv(2, len(ws), [[-x for x in w] for w in ws])
    a = decide_metabelian_complex(s1, with_witness=False)
    b = decide_metabelian_complex(s2, with_witness=False)
    assert (a.status, a.citations) == (b.status, b.citations)


FIELDS = [R, C, FieldDesc.padic(2), FieldDesc.padic(5), FieldDesc.laurent(3)]


@st.composite
def well_formed_specs(draw):
    kind = draw(st.sampled_from(["solvable", "levi", "semisimple", "borel"]))
    if kind == "semisimple":
        iso, an = draw(st.sampled_from([(True, False), (True, True), (False, True)]))
        return Semisimple(iso, an)
    if kind == "borel":
        simple = draw(st.booleans())
        return BorelOf(simple, 1 if simple else draw(st.integers(1, 3)))
    n = draw(st.integers(0, 4))
    m = draw(st.integers(0, 2))
    weights = [[draw(st.integers(-2, 2)) for _ in range(m)] for _ in range(n)]
    brackets = []
    for i, j in itertools.combinations(range(n), 2):
        targets = [k for k in range(j + 1, n) if all(a + b == c for a, b, c in zip(weights[i], weights[j], weights[k]))]
        if targets and draw(st.booleans()):
            brackets.append((i, j, draw(st.sampled_from(targets)), 1))
    s = solv(m, n, weights, brackets, anis=draw(st.integers(0, 1)), comm_Q=draw(st.booleans()))
    if kind == "levi":
        return Levi(Semisimple(draw(st.booleans()), draw(st.booleans())), s, draw(st.booleans()))
    return s


@settings(max_examples=300, deadline=None)
@given(well_formed_specs(), st.sampled_from(FIELDS))
def test_decide_is_total(s, field):
    if validate_spec(s):
        with pytest.raises(InvalidSpec):
            decide(s, field)
        return
    v = decide(s, field)
    assert v.status in (EXISTS, NOT_EXISTS, UNKNOWN)
    if v.status != UNKNOWN:
        assert v.citations
    else:
        assert any(ok for _, ok in v.conditions)
    assert isinstance(v.to_json(), dict)


def _witness_gens(v):
    return GeneratorSet.from_json(v.witness["generators"])


@pytest.mark.parametrize(
    "s",
    [spec("qsqrt2"), spec("borel_sl2xsl2"), solv(2, 3, [[1, 0], [0, 1], [-1, -1]])],
    ids=["qsqrt2", "borel", "cubic"],
)
def test_constructive_witnesses_are_sound(s):
    v = decide(s, C)
    assert v.status == EXISTS and v.constructive
    gens = _witness_gens(v)
    assert density_check(gens, s).passed
    assert discreteness_margin(gens, 3, 10.0).min_distance > 1e-9


def test_lift_witness_is_sound():
    v = decide(spec("sl2_c2"), C)
    gens = _witness_gens(v)
    assert density_check(gens).passed
    assert discreteness_margin(gens, 3, 10.0).min_distance > 1e-9


def test_nonconstructive_exists_cite_existence_theorems():
    for s, field in ((spec("semisimple_isotropic"), R), (spec("heisenberg"), R), (solv(0, 2, [[], []]), C)):
        v = decide(s, field)
        assert v.status == EXISTS and not v.constructive
        assert set(v.citations) & {"ThmA", "Malcev", "Malcev-Cor", "Lemma7"}
