"""Decision engine: (GroupSpec, FieldDesc) -> three-valued Verdict with citations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from .errors import InvalidSpec, NotBasisGraded, ShapeMismatch, WrongVariant
from .group_spec import (
    BorelOf,
    FieldDesc,
    FieldKind,
    GroupSpec,
    Levi,
    Semisimple,
    Solvable,
    UnipotentPart,
    cgroups_closure,
    derived_series,
    is_central_basis_vector,
    is_commutative,
    is_unimodular,
    validate_spec,
)
from .linalg import rank_gaussian_rational

EXISTS = "Exists"
NOT_EXISTS = "NotExists"
UNKNOWN = "Unknown"

CHAR_P = "char>0 partial results"
EX5_RULE = "Ex5-rule (extension)"
EX5_WEIGHTS = (-1, -1, 2)


@dataclass
class Verdict:
    status: str
    citations: list = field(default_factory=list)
    conditions: list = field(default_factory=list)  # (name, passed)
    witness: Optional[dict] = None
    notes: list = field(default_factory=list)
    evidence: dict = field(default_factory=dict)
    constructive: bool = False

    def __post_init__(self):
        if self.status in (EXISTS, NOT_EXISTS) and not self.citations:
            raise ValueError(f"{self.status} verdict without a citation")
        if self.status == UNKNOWN and not any(ok for _, ok in self.conditions):
            raise ValueError("Unknown verdict must list a passed necessary condition")

    @property
    def exit_code(self) -> int:
        return {EXISTS: 0, NOT_EXISTS: 1, UNKNOWN: 2}[self.status]

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "citations": list(self.citations),
            "conditions": [{"name": n, "pass": bool(ok)} for n, ok in self.conditions],
            "constructive": self.constructive,
            "notes": list(self.notes),
            "evidence": self.evidence,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# ---------------------------------------------------------------- amenability


def is_amenable(spec: GroupSpec, field: FieldDesc) -> Optional[bool]:
    """True / False, or None when undetermined (positive characteristic, non-solvable)."""
    if isinstance(spec, (Solvable, BorelOf)):
        return True
    if field.characteristic != 0:
        return None
    ss = spec.semisimple if isinstance(spec, Levi) else spec
    return not ss.isotropic


# ---------------------------------------------------------------- non-solvable


def _radical_dim(spec: Levi) -> int:
    r = spec.radical
    return r.n + r.torus.dim


def _sl2_lift_witness() -> dict:
    from .verify import GeneratorSet, lift_discrete_dense

    sanov = GeneratorSet.matrices([[[1, 2], [0, 1]], [[1, 0], [2, 1]]], labels=["A", "B"])
    lattice = [[1, 0], [0, 1], [1j, 0], [0, 1j]]
    gens = lift_discrete_dense(sanov, lattice)
    return {"kind": "lift", "assumes": "SL_2 acting on C^2 by the standard representation",
            "generators": gens.to_json()}


def decide_nonsolvable_char0(spec: GroupSpec, field: FieldDesc) -> Verdict:
    if not isinstance(spec, (Semisimple, Levi)):
        raise WrongVariant(f"expected Semisimple or Levi, got {spec.variant}")
    if field.characteristic != 0:
        raise WrongVariant("characteristic 0 only")
    levi = isinstance(spec, Levi)
    ss = spec.semisimple if levi else spec
    rad = _radical_dim(spec) if levi else 0
    conds = [("G/R is k-isotropic", ss.isotropic)]
    if ss.isotropic:
        v = Verdict(EXISTS, ["Thm1"], conds)
        if not levi or rad == 0:
            v.citations.append("ThmA")
            v.notes.append("non-constructive: an arithmetic lattice exists by reduction theory")
        else:
            v.notes.append("lifting construction: a free discrete subgroup of S(k) lifted along the radical")
            if spec.is_semidirect_over_k:
                v.citations.append("Prop1")
            r = spec.radical
            if (field.kind == FieldKind.ARCH_COMPLEX and spec.is_semidirect_over_k and r.n == 2
                    and r.torus.dim == 0 and r.unipotent.is_abelian()):
                v.witness = _sl2_lift_witness()
                v.constructive = True
        return v
    v = Verdict(NOT_EXISTS, ["Thm1", "Prop2-Cor"], conds + [("G != R", True)])
    v.notes.append("G/R(k) is compact, so G(k) is amenable and a Zariski-dense discrete subgroup would force G solvable")
    return v


# ---------------------------------------------------------------- p-adic


def decide_padic_solvable(spec: GroupSpec, field: FieldDesc) -> Verdict:
    if field.kind != FieldKind.PADIC:
        raise WrongVariant("p-adic field required")
    s = _solvable(spec)
    comm = is_commutative(s)
    if not comm:
        return Verdict(NOT_EXISTS, ["Prop5", "Thm4"], [("commutative", False)],
                       notes=["every discrete subgroup of a noncommutative solvable p-adic group is commutative"])
    gi, gc, gu = s.torus.split_rank, s.torus.anisotropic_rank, s.n
    not_compact = (gi + gu) > 0
    rank_ok = gi >= max(1, gu)
    conds = [("commutative", True), ("G != G_c", not_compact), ("split_rank >= max(1, dim G_u)", rank_ok)]
    ev = {"dims": {"G_i": gi, "G_c": gc, "G_u": gu}}
    if not_compact and rank_ok:
        p = field.p
        recipe = {
            "kind": "recipe",
            "uniformizer": p,
            "split_part": f"(x^n_1, ..., x^n_{gi}) with x = {p}, n in Z^{gi}",
            "generators": [
                {"index": j + 1, "split": f"{p} in coordinate {j + 1}",
                 "unipotent": f"e{j + 1}" if j < gu else None,
                 "anisotropic": "generator of a Zariski-dense cyclic subgroup" if (j == 0 and gc) else None}
                for j in range(gi)
            ],
        }
        return Verdict(EXISTS, ["Prop8", "Thm4"], conds, witness=recipe, evidence=ev, constructive=True)
    cites = ["Prop8", "Thm4"]
    if gi == 0 and gc == 0 and gu > 0:
        cites.append("Cor3")
    return Verdict(NOT_EXISTS, cites, conds, evidence=ev)


# ---------------------------------------------------------------- unipotent


def decide_unipotent_real(spec: GroupSpec) -> Verdict:
    s = _solvable(spec)
    if s.torus.dim:
        raise WrongVariant("unipotent spec (zero torus) required")
    u = s.unipotent
    conds = [("structure constants rational", u.rational), ("over_Q flag", u.over_Q)]
    if u.rational:
        v = Verdict(EXISTS, ["Malcev"], conds, constructive=False)
        v.notes.append("non-constructive; every such subgroup is cocompact (the Z-span of a rational basis generates one)")
        if not u.over_Q:
            v.notes.append("over_Q flag is false but the given basis has rational constants, which defines a Q-form")
        return v
    return Verdict(UNKNOWN, ["Malcev"], conds + [("nilpotent (unimodular automatically)", True)],
                   notes=["structure constants are only approximate; Q-definability cannot be decided from the data"])


def _gaussian(x) -> tuple:
    if isinstance(x, (tuple, list)):
        return Fraction(x[0]), Fraction(x[1])
    if isinstance(x, complex):
        return Fraction(x.real), Fraction(x.imag)
    return Fraction(x), Fraction(0)


def decide_unipotent_complex(real_form: UnipotentPart, inclusion: Sequence[Sequence[Any]], ambient_dim: int) -> Verdict:
    """Exists iff the complex span of the image of the real Q-form is the whole ambient algebra."""
    if len(inclusion) != real_form.dim or any(len(row) != ambient_dim for row in inclusion):
        raise ShapeMismatch(
            f"inclusion must have {real_form.dim} rows of length {ambient_dim}"
        )
    vecs = [[_gaussian(x) for x in row] for row in inclusion]
    rank = rank_gaussian_rational(vecs) if vecs else 0
    conds = [("real form has rational constants", real_form.rational), ("complex span is full", rank == ambient_dim)]
    ev = {"complex_rank": rank, "ambient_dim": ambient_dim}
    if real_form.rational and rank == ambient_dim:
        return Verdict(EXISTS, ["Malcev-Cor", "Thm2"], conds, evidence=ev,
                       notes=["lattice of the real Q-form is discrete and Zariski-dense"])
    why = "span deficient: this real form lies in a proper complex subgroup" if rank < ambient_dim else \
        "real form constants are not exactly rational"
    return Verdict(UNKNOWN, ["Malcev-Cor"], [c for c in conds] + [("input well-formed", True)], evidence=ev, notes=[why])


# ---------------------------------------------------------------- solvable obstructions


def _subgroup_evidence(s: Solvable, h) -> dict:
    labels = s.unipotent.labels
    (k,) = tuple(h.basis)
    return {
        "subgroup": h.describe(labels),
        "dim": h.dim,
        "weight": list(s.weights[k]),
        "central": is_central_basis_vector(s, k),
    }


def obstruction_one_dim_noncentral(spec: GroupSpec) -> Optional[dict]:
    """A one-dimensional noncentral member of C(G), or None."""
    s = _solvable(spec)
    for h in cgroups_closure(s):
        if h.dim == 1 and not h.torus and len(h.basis) == 1:
            (k,) = tuple(h.basis)
            if not is_central_basis_vector(s, k):
                return {"citation": "Prop3", **_subgroup_evidence(s, h)}
    return None


def _series_evidence(s: Solvable) -> list:
    try:
        terms = derived_series(s)
    except NotBasisGraded:
        return []
    labels = s.unipotent.labels
    out = []
    for h in terms:
        d = h.to_json(labels)
        d["describe"] = h.describe(labels)
        if h.dim == 1 and len(h.basis) == 1:
            d.update({k: v for k, v in _subgroup_evidence(s, h).items() if k in ("weight", "central")})
        out.append(d)
    return out


def _prop3(s: Solvable, conds: list, notes: list) -> Optional[Verdict]:
    try:
        hit = obstruction_one_dim_noncentral(s)
    except NotBasisGraded as e:
        notes.append(f"C(G) scan skipped: {e}")
        return None
    conds.append(("no one-dimensional noncentral member of C(G)", hit is None))
    if hit is None:
        return None
    ev = {"derived_series": _series_evidence(s), "obstruction": hit}
    return Verdict(NOT_EXISTS, ["Prop3"], conds, evidence=ev, notes=notes)


def necessary_real_solvable(spec: GroupSpec) -> Verdict:
    s = _solvable(spec)
    conds: list = []
    notes: list = []
    uni = is_unimodular(s)
    conds.append(("unimodular", uni))
    if not uni:
        return Verdict(NOT_EXISTS, ["Prop7", "Thm3"], conds, evidence={"derived_series": _series_evidence(s)})
    qdef = s.commutator_over_Q and s.unipotent.rational
    conds.append(("commutator group defined over Q", qdef))
    if not qdef:
        return Verdict(NOT_EXISTS, ["Prop7", "Thm3"], conds, evidence={"derived_series": _series_evidence(s)})
    v = _prop3(s, conds, notes)
    if v is not None:
        return v
    notes.append("the conditions are necessary but in general not sufficient; no sufficient rule applies")
    return Verdict(UNKNOWN, ["Thm3"], conds, evidence={"derived_series": _series_evidence(s)}, notes=notes)


# ---------------------------------------------------------------- metabelian over C


def _is_ex5_instance(weights) -> bool:
    flat = tuple(sorted(w[0] for w in weights))
    return flat == EX5_WEIGHTS or flat == tuple(sorted(-x for x in EX5_WEIGHTS))


def _construction_witness(match: dict, weights) -> dict:
    from .number_construct import construct, construction_generators

    cg, emb, closure = construct(match["poly"])
    gens = construction_generators(cg, match["variant"])
    return {
        "kind": "construction",
        "poly": list(match["poly"]),
        "variant": match["variant"],
        "reason": match["reason"],
        "coordinates": "eigenline coordinates of rho(T); weights " + str([list(w) for w in weights]),
        "identified_as": cg.borel,
        "generators": gens.to_json(),
    }


def decide_metabelian_complex(spec: GroupSpec, strict_paper: bool = False, with_witness: bool = True) -> Verdict:
    s = _solvable(spec)
    W = [tuple(w) for w in s.weights]
    m = s.torus.split_rank
    if m < 1 or not s.unipotent.is_abelian() or not W or any(not any(w) for w in W):
        raise WrongVariant("metabelian rule needs split_rank >= 1, abelian V and nonzero weights")
    uni = is_unimodular(s)
    conds = [("unimodular", uni)]
    notes: list = []
    ev = {"weights": [list(w) for w in W], "unimodular": uni}
    if m == 1:
        values = [w[0] for w in W]
        distinct = len(set(values)) == len(values)
        conds.append(("weights distinct", distinct))
        if distinct and not uni:
            return Verdict(NOT_EXISTS, ["Prop9"], conds, evidence=ev)
        distinct_sum = sum(set(values))
        ev["distinct_weight_sum"] = distinct_sum
        conds.append(("sum of distinct weight values is 0", distinct_sum == 0))
        if distinct_sum != 0:
            if _is_ex5_instance(W):
                cites = ["Ex5"] if strict_paper else [EX5_RULE, "Ex5"]
                return Verdict(NOT_EXISTS, cites, conds, evidence=ev)
            if not strict_paper:
                return Verdict(NOT_EXISTS, [EX5_RULE], conds, evidence=ev,
                               notes=["generalises the worked instance with weights (2,-1,-1)"])
            notes.append("strict mode: the weight-space determinant argument is applied only to (2,-1,-1)")
    from .number_construct import match_pattern

    match = match_pattern(W)
    conds.append(("matches a number-field construction", match is not None))
    if match is not None:
        v = Verdict(EXISTS, ["NumberFieldConstruction", "Thm2"], conds, evidence={**ev, "pattern": match}, notes=notes)
        if with_witness:
            v.witness = _construction_witness(match, W)
            v.constructive = True
        return v
    conds.append(("no metabelian obstruction fired", True))
    notes.append("no obstruction and no constructive pattern applies")
    return Verdict(UNKNOWN, ["Thm2"], conds, evidence=ev, notes=notes)


# ---------------------------------------------------------------- dispatch


def _solvable(spec) -> Solvable:
    if isinstance(spec, Solvable):
        return spec
    if isinstance(spec, Levi):
        return spec.radical
    raise WrongVariant(f"operation needs a Solvable spec, got {spec.variant}")


def _decide_borel(spec: BorelOf, field: FieldDesc) -> Verdict:
    simple = spec.simple or spec.count == 1
    if simple:
        return Verdict(NOT_EXISTS, ["Borel-Cor", "Prop3"], [("ambient simple", True)],
                       notes=["the root group of the highest root is one-dimensional, noncentral and lies in C(G)"])
    if field.kind == FieldKind.PADIC:
        return Verdict(NOT_EXISTS, ["Prop5"], [("commutative", False)])
    if field.kind == FieldKind.ARCH_REAL:
        return Verdict(NOT_EXISTS, ["Prop7", "Thm3"], [("unimodular", False)],
                       notes=["a Borel subgroup of a split real group is not unimodular"])
    return Verdict(UNKNOWN, ["Thm2"], [("ambient simple", False), ("solvable", True)],
                   notes=["Borel groups in SL2(C)xSL2(C) do admit such subgroups; the factors are not specified here"])


def _decide_solvable(s: Solvable, field: FieldDesc, strict_paper: bool) -> Verdict:
    if field.kind == FieldKind.PADIC:
        return decide_padic_solvable(s, field)
    if s.n + s.torus.dim == 0:
        return Verdict(EXISTS, ["trivial group"], [("dim G = 0", True)], constructive=True)
    real = field.kind == FieldKind.ARCH_REAL
    if is_commutative(s):
        if real and s.n + s.torus.split_rank == 0:
            return Verdict(NOT_EXISTS, ["Lemma7"], [("G(k) non-compact", False)],
                           notes=["G(k) is a compact torus; discrete subgroups are finite"])
        return Verdict(EXISTS, ["Lemma7"], [("G(k) non-compact", True)],
                       notes=["a cocompact discrete subgroup exists"])
    if s.torus.dim == 0:
        if real:
            return decide_unipotent_real(s)
        u = s.unipotent
        ident = [[(1 if i == j else 0, 0) for j in range(u.dim)] for i in range(u.dim)]
        return decide_unipotent_complex(u, ident, u.dim)
    if real:
        return necessary_real_solvable(s)
    # complex, with torus action
    conds: list = []
    notes: list = []
    v = _prop3(s, conds, notes)
    if v is not None:
        return v
    if s.torus.split_rank >= 1 and s.unipotent.is_abelian() and all(any(w) for w in s.weights):
        inner = decide_metabelian_complex(s, strict_paper)
        inner.conditions = conds + inner.conditions
        inner.notes = notes + inner.notes
        return inner
    conds.append(("solvable", True))
    notes.append("no rule for this complex solvable shape")
    return Verdict(UNKNOWN, ["Thm2"], conds, notes=notes)


def decide(spec: GroupSpec, field: FieldDesc, strict_paper: bool = False) -> Verdict:
    problems = validate_spec(spec)
    if problems:
        raise InvalidSpec(problems)
    if field.characteristic != 0:
        amen = is_amenable(spec, field)
        return Verdict(UNKNOWN, [CHAR_P], [("spec well-formed", True), ("amenable", bool(amen))],
                       notes=["positive characteristic: only the gallery examples are decided, at truncation"])
    if isinstance(spec, BorelOf):
        return _decide_borel(spec, field)
    if isinstance(spec, Semisimple):
        return decide_nonsolvable_char0(spec, field)
    if isinstance(spec, Levi):
        if spec.semisimple.isotropic or spec.semisimple.anisotropic_factor_present:
            return decide_nonsolvable_char0(spec, field)
        return _decide_solvable(spec.radical, field, strict_paper)
    return _decide_solvable(spec, field, strict_paper)


__all__ = [
    "Verdict", "EXISTS", "NOT_EXISTS", "UNKNOWN", "decide", "is_amenable", "decide_nonsolvable_char0",
    "decide_padic_solvable", "decide_unipotent_real", "decide_unipotent_complex",
    "obstruction_one_dim_noncentral", "necessary_real_solvable", "decide_metabelian_complex",
]
