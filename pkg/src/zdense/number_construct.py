"""Unit lattices of number fields and the metabelian groups they generate.

A monic integer polynomial ``f`` defines ``K = Q[x]/(f)``; the order ``Z[theta]``
stands in for the ring of integers.  Embeddings are ordered real roots
ascending, then one root per complex pair (positive imaginary part), sorted by
real then imaginary part.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from . import poly as P
from .errors import (
    NotIrreducible,
    NotSquarefree,
    PrecisionUnreachable,
    RankDeficient,
    SearchExhausted,
)
from .linalg import rref_rational
from .relations import find_relation

DEFAULT_DIGITS = 30
MAX_DOUBLINGS = 4
BOREL_FLAG = "Borel group in SL2(C)xSL2(C)"


@dataclass(frozen=True)
class NumberFieldSpec:
    poly: tuple
    r1: int
    r2: int

    @property
    def d(self) -> int:
        return len(self.poly) - 1

    @property
    def r(self) -> int:
        return self.r1 + self.r2 - 1

    @property
    def totally_real(self) -> bool:
        return self.r2 == 0


def signature(poly: Sequence[int]) -> tuple[int, int]:
    d = P.degree(poly)
    r1 = P.real_root_count(poly)
    return r1, (d - r1) // 2


def number_field(poly, assume_irreducible: bool = False) -> NumberFieldSpec:
    coeffs = P.trim([int(c) for c in poly])
    if len(coeffs) < 3:
        raise ValueError("need a polynomial of degree >= 2")
    if coeffs[-1] != 1:
        raise ValueError(f"{P.poly_str(coeffs)} is not monic")
    if not P.is_squarefree(coeffs):
        raise NotSquarefree(f"gcd(f, f') is nonconstant for {P.poly_str(coeffs)}")
    if not assume_irreducible and not P.is_irreducible(coeffs):
        raise NotIrreducible(f"{P.poly_str(coeffs)} factors over Q")
    r1, r2 = signature(coeffs)
    return NumberFieldSpec(tuple(coeffs), r1, r2)


# ---------------------------------------------------------------- embeddings


@dataclass(frozen=True)
class EmbeddingData:
    roots: tuple  # mpmath numbers; the first r1 are real
    r1: int
    digits: int
    dps: int

    @property
    def eps(self):
        return mpmath.mpf(10) ** (-self.digits)

    def embed(self, element: Sequence[int]) -> list:
        """phi(element) for power-basis coordinates, one value per embedding."""
        with mpmath.workdps(self.dps):
            return [mpmath.polyval(list(reversed(list(element))) or [0], z) for z in self.roots]

    def as_complex(self) -> np.ndarray:
        return np.array([complex(z) for z in self.roots])


def _residue_ok(coeffs, z, eps, d) -> bool:
    bound = d * eps * (1 + max(abs(c) for c in coeffs))
    return abs(mpmath.polyval(list(reversed(coeffs)), z)) < bound


def _newton(coeffs, z, steps=8):
    hi = list(reversed(coeffs))
    der = list(reversed(P.derivative(coeffs)))
    for _ in range(steps):
        fz = mpmath.polyval(hi, z)
        dz = mpmath.polyval(der, z)
        if dz == 0:
            break
        z = z - fz / dz
    return z


def compute_embeddings(poly, digits: int = DEFAULT_DIGITS) -> EmbeddingData:
    coeffs = P.trim([int(c) for c in poly])
    d = len(coeffs) - 1
    if not P.is_squarefree(coeffs):
        raise NotSquarefree(f"gcd(f, f') is nonconstant for {P.poly_str(coeffs)}")
    r1 = P.sturm_count(coeffs)
    target = digits
    for attempt in range(MAX_DOUBLINGS + 1):
        dps = 2 * target + 20
        with mpmath.workdps(dps):
            eps = mpmath.mpf(10) ** (-digits)
            try:
                raw = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200 + 50 * attempt, extraprec=dps)
            except mpmath.libmp.NoConvergence:
                target *= 2
                continue
            raw = sorted((mpmath.mpc(z) for z in raw), key=lambda z: abs(z.imag))
            real = sorted(_newton(coeffs, mpmath.mpf(z.real)) for z in raw[:r1])
            cplx = [_newton(coeffs, z) for z in raw[r1:]]
            cplx = [z if z.imag > 0 else mpmath.conj(z) for z in cplx]
            reps = []
            for z in sorted(cplx, key=lambda z: (z.real, z.imag)):
                if not any(abs(z - w) < 10 * eps for w in reps):
                    reps.append(z)
            roots = real + reps
            full = real + reps + [mpmath.conj(z) for z in reps]
            ok = len(reps) * 2 + len(real) == d and all(_residue_ok(coeffs, z, eps, d) for z in full)
            ok = ok and all(abs(a - b) > 10 * eps for a, b in itertools.combinations(full, 2))
            if ok:
                return EmbeddingData(tuple(roots), r1, digits, dps)
        target *= 2
    raise PrecisionUnreachable(f"roots of {P.poly_str(coeffs)} not certified to 1e-{digits}")


# ---------------------------------------------------------------- units


def field_norm(element: Sequence[int], poly: Sequence[int]) -> int:
    """N_{K/Q} of an element of Z[theta], as Res(f, g) (f monic)."""
    g = P.trim([int(c) for c in element])
    if not g:
        return 0
    res = P.resultant(list(poly), g)
    assert res.denominator == 1
    return int(res)


@dataclass(frozen=True)
class UnitGroup:
    fundamental_units: tuple
    torsion_order: int
    method: str
    coeff_bound: Optional[int] = None
    norms: tuple = ()

    @property
    def rank(self) -> int:
        return len(self.fundamental_units)


def _log_vector(values, r1) -> list[float]:
    out = []
    for i, v in enumerate(values):
        w = 1 if i < r1 else 2
        out.append(w * float(mpmath.log(abs(v))))
    return out


def _normalise(unit, poly, emb: EmbeddingData):
    """Pick the representative of {+-u, +-u^-1} that is > 1 at a reference embedding.

    The reference is the largest real root where |u| != 1, falling back to the
    complex embeddings (last first).
    """
    vals = emb.embed(unit)
    r1 = emb.r1
    order = list(reversed(range(r1))) + list(reversed(range(r1, len(vals))))
    for i in order:
        mag = abs(vals[i])
        if abs(mag - 1) > 1e-12:
            break
    else:
        return list(unit)
    u = list(unit)
    if mag < 1:
        u = _inverse_unit(u, poly)
        vals = emb.embed(u)
    if i < emb.r1 and vals[i].real < 0:
        u = [-c for c in u]
    return u


def _inverse_unit(u, poly) -> list[int]:
    """u^-1 = N(u) * (product of the other conjugates), via the characteristic polynomial."""
    d = len(poly) - 1
    u = list(u) + [0] * (d - len(u))
    # columns of the multiplication-by-u matrix
    cols = []
    e = [1] + [0] * (d - 1)
    for _ in range(d):
        cols.append(P.mul_mod(u, e, poly))
        e = P.mul_mod(e, [0, 1] + [0] * (d - 2), poly) if d > 1 else e
    M = [[Fraction(cols[j][i]) for j in range(d)] for i in range(d)]
    # solve M x = e_0
    aug = [row + [Fraction(1 if i == 0 else 0)] for i, row in enumerate(M)]
    R, piv = rref_rational(aug)
    x = [Fraction(0)] * d
    for row, c in zip(R, piv):
        x[c] = row[-1]
    assert all(v.denominator == 1 for v in x), "not a unit of Z[theta]"
    return [int(v) for v in x]


def _quadratic_unit(poly) -> list[int]:
    """Fundamental unit of Z[theta] for a real quadratic f via the continued fraction of theta."""
    c, b, _ = poly
    D = b * b - 4 * c
    s = math.isqrt(D)
    Pk, Qk = -b, 2
    seen = {}
    states = []
    while (Pk, Qk) not in seen:
        seen[(Pk, Qk)] = len(states)
        states.append((Pk, Qk))
        if Qk > 0:
            a = (Pk + s) // Qk
        else:
            a = -((Pk + s) // (-Qk) + 1)
        Pk = a * Qk - Pk
        Qk = (D - Pk * Pk) // Qk
    period = states[seen[(Pk, Qk)]:]
    # product of complete quotients (P + sqrt D)/Q, kept as (A + B sqrt D)
    A, B = Fraction(1), Fraction(0)
    for Pi, Qi in period:
        A, B = (A * Pi + B * D) / Qi, (A + B * Pi) / Qi
    # sqrt D = 2 theta + b
    u = [A + B * b, 2 * B]
    assert all(x.denominator == 1 for x in u)
    return [int(x) for x in u]


def _box_units(poly, emb: EmbeddingData, bound: int):
    d = len(poly) - 1
    roots = emb.as_complex()
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=d)), dtype=np.int64)
    powers = np.array([roots**j for j in range(d)])  # d x (#emb)
    vals = grid @ powers
    weights = np.array([1 if i < emb.r1 else 2 for i in range(len(roots))])
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(vals)) * weights
    norm_est = np.exp(logs.sum(axis=1))
    cand = np.where(np.abs(norm_est - 1) < 1e-6)[0]
    units = []
    for idx in cand:
        coords = [int(x) for x in grid[idx]]
        nrm = field_norm(coords, poly)
        if nrm in (1, -1):
            units.append((coords, nrm, logs[idx]))
    return units


def _torsion_from_box(units) -> int:
    return sum(1 for _, _, lg in units if np.max(np.abs(lg)) < 1e-9)


def find_fundamental_units(poly, coeff_bound: int = 10, candidates=None, emb: EmbeddingData | None = None) -> UnitGroup:
    nf = number_field(poly, assume_irreducible=candidates is not None)
    poly = list(nf.poly)
    emb = emb or compute_embeddings(poly)
    r = nf.r

    if candidates is not None:
        cands = [list(c) for c in candidates]
        norms = [field_norm(c, poly) for c in cands]
        if any(n not in (1, -1) for n in norms):
            raise RankDeficient(f"supplied elements have norms {norms}, not all units")
        logs = [_log_vector(emb.embed(c), nf.r1) for c in cands]
        if len(cands) != r or (r and _log_rank(logs) < r):
            raise RankDeficient(f"supplied units have rank {_log_rank(logs) if logs else 0}, need {r}")
        return UnitGroup(tuple(tuple(c) for c in cands), 2 if nf.r1 else 0, "supplied", None, tuple(norms))

    if nf.d == 2 and nf.r1 == 2:
        u = _normalise(_quadratic_unit(poly), poly, emb)
        return UnitGroup((tuple(u),), 2, "continued-fraction", None, (field_norm(u, poly),))
    if nf.d > 3:
        raise RankDeficient("unit search is only implemented up to degree 3; supply candidate units")

    box = _box_units(poly, emb, coeff_bound)
    torsion = 2 if nf.r1 else _torsion_from_box(box)
    chosen: list = []
    chosen_logs: list = []
    scored = []
    for coords, nrm, lg in box:
        if np.max(np.abs(lg)) < 1e-9:
            continue
        height = float(np.sum(np.abs(lg)))
        scored.append((round(height, 9), coords, nrm, list(lg)))
    scored.sort(key=lambda t: (t[0], t[1]))
    for _, coords, nrm, lg in scored:
        if len(chosen) == r:
            break
        if _log_rank(chosen_logs + [lg]) > len(chosen):
            chosen.append(coords)
            chosen_logs.append(lg)
    if len(chosen) < r:
        raise SearchExhausted(coeff_bound)
    units = [_normalise(c, poly, emb) for c in chosen]
    return UnitGroup(
        tuple(tuple(u) for u in units), torsion, "box", coeff_bound, tuple(field_norm(u, poly) for u in units)
    )


def _log_rank(rows) -> int:
    if not rows:
        return 0
    # drop the last coordinate: the log vectors lie in the trace-zero hyperplane
    M = np.array(rows, dtype=float)[:, :-1]
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > 1e-12))


def regulator(units: UnitGroup, emb: EmbeddingData) -> float:
    if not units.rank:
        return 1.0
    rows = [_log_vector(emb.embed(u), emb.r1)[:-1] for u in units.fundamental_units]
    return abs(float(np.linalg.det(np.array(rows))))


# ---------------------------------------------------------------- construction


@dataclass
class ConstructedGroup:
    nf: NumberFieldSpec
    units: UnitGroup
    torus_gens: list  # per unit: list of embedding values
    lattice_gens: list  # per power-basis element: list of embedding values
    totally_real: bool
    cocompact_variant: Optional[dict] = None
    det_abs: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    m_claim: Optional[int] = None
    borel: Optional[str] = None


def _delta_generators(units: UnitGroup, poly) -> list[list[int]]:
    """Generators of the norm-one subgroup of the free part of <units> (times -1 for odd degree)."""
    d = len(poly) - 1
    gens = []
    odd_degree = d % 2 == 1
    first_neg = None
    for u, n in zip(units.fundamental_units, units.norms):
        u = list(u)
        if n == 1:
            gens.append(u)
        elif odd_degree:
            gens.append([-c for c in u])  # N(-u) = -N(u)
        elif first_neg is None:
            first_neg = u
            gens.append(P.mul_mod(u, u, poly))
        else:
            gens.append(P.mul_mod(first_neg, u, poly))
    return gens


def build_construction(nf: NumberFieldSpec, units: UnitGroup, emb: EmbeddingData) -> ConstructedGroup:
    poly = list(nf.poly)
    d = nf.d
    torus = [emb.embed(u) for u in units.fundamental_units]
    basis = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    lattice = [emb.embed(b) for b in basis]
    out = ConstructedGroup(nf, units, torus, lattice, nf.totally_real)
    with mpmath.workdps(emb.dps):
        out.det_abs = [abs(mpmath.fprod(t)) for t in torus]
    if nf.totally_real:
        deltas = _delta_generators(units, poly)
        dvals = [emb.embed(u) for u in deltas]
        with mpmath.workdps(emb.dps):
            dets = [mpmath.fprod(v) for v in dvals]
        with mpmath.workdps(emb.dps):
            imag = [[mpmath.mpc(0, 1) * z for z in v] for v in lattice]
        out.cocompact_variant = {
            "delta_units": deltas,
            "delta_gens": dvals,
            "delta_dets": dets,
            "lattice_gens": lattice + imag,
        }
        out.notes.append("rho(T) is a maximal torus of SL(V)")
        out.m_claim = nf.r
    if nf.r1 == 1 and nf.r2 == 1:
        out.m_claim = 2
        out.borel = BOREL_FLAG
        out.notes.append("non-unimodular: |det tau(u)| = |zeta_1(u)|^(1/2) != 1")
    return out


@dataclass(frozen=True)
class ClosureDim:
    m: int
    flag: str  # "witnessed" or "bound-limited"
    relation: Optional[tuple] = None
    torsion_order: Optional[int] = None
    exponent_bound: int = 0


def torus_closure_dim(units: UnitGroup, emb: EmbeddingData, exponent_bound: int = 20) -> ClosureDim:
    """Dimension of the Zariski closure of tau(units), with the evidence it rests on.

    A character n of the diagonal torus with chi_n(tau(u)) a root of unity for every
    unit u still cuts the dimension: the closure's identity component lies in ker chi_n^k.
    """
    r = units.rank
    if r == 0:
        raise ValueError("torsion-only unit group: no torus part to close up")
    rows = [emb.embed(u) for u in units.fundamental_units]
    rel = find_relation(rows, exponent_bound, allow_torsion=True, dps=emb.dps)
    if rel is None:
        return ClosureDim(r + 1, "bound-limited", None, None, exponent_bound)
    n, order = rel
    return ClosureDim(r, "witnessed", tuple(n), order, exponent_bound)


# ---------------------------------------------------------------- patterns

TOTALLY_REAL = {2: [-2, 0, 1], 3: [1, -3, 0, 1]}
MIXED_CUBIC = [-1, -1, 0, 1]


def match_pattern(weights: Sequence[Sequence[int]]) -> Optional[dict]:
    """Recognise weight data realised by one of the built-in number-field constructions.

    Returns {"poly", "variant", "reason"} or None.  Weights are rows (one per
    basis vector of V), columns are torus coordinates.
    """
    from sympy import Matrix

    n = len(weights)
    m = len(weights[0]) if weights else 0
    if n == 0 or m == 0:
        return None
    W = Matrix(weights)
    if W.rank() != m:
        return None
    if m == n - 1 and n in TOTALLY_REAL and all(sum(W[:, c]) == 0 for c in range(m)):
        return {
            "poly": TOTALLY_REAL[n],
            "variant": "cocompact",
            "reason": f"rho(T) is the maximal torus of SL_{n}; totally real field of degree {n}",
        }
    if m == n == 2:
        return {
            "poly": MIXED_CUBIC,
            "variant": "full",
            "reason": "rho(T) is the full diagonal torus of GL_2; field with r1 = r2 = 1",
        }
    return None


# ---------------------------------------------------------------- output


def construction_generators(cg: ConstructedGroup, variant: str = "auto"):
    """Affine generators (diagonal torus part, lattice translations) of the constructed group."""
    from .verify.generators import GeneratorSet

    use = variant
    if use == "auto":
        use = "cocompact" if cg.cocompact_variant else "full"
    if use == "cocompact":
        if not cg.cocompact_variant:
            raise ValueError("no cocompact variant: the field is not totally real")
        torus, lattice = cg.cocompact_variant["delta_gens"], cg.cocompact_variant["lattice_gens"]
    else:
        torus, lattice = cg.torus_gens, cg.lattice_gens
    n = len(lattice[0])
    linear = [np.diag([complex(z) for z in t]) for t in torus] + [np.eye(n) for _ in lattice]
    trans = [np.zeros(n) for _ in torus] + [[complex(z) for z in v] for v in lattice]
    labels = [f"t{i + 1}" for i in range(len(torus))] + [f"v{j + 1}" for j in range(len(lattice))]
    return GeneratorSet.affine(linear, trans, labels, meta={"source": "construct", "variant": use,
                                                             "poly": list(cg.nf.poly)})


def construction_to_json(cg: ConstructedGroup, emb: EmbeddingData, closure: Optional[ClosureDim] = None) -> dict:
    from .verify.generators import complex_pair

    digits = emb.dps

    def vecs(rows):
        return [[complex_pair(z, digits) for z in row] for row in rows]

    nf = cg.nf
    doc = {
        "field": {
            "poly": P.poly_str(nf.poly),
            "coefficients": list(nf.poly),
            "degree": nf.d,
            "r1": nf.r1,
            "r2": nf.r2,
            "r": nf.r,
            "embeddings": [complex_pair(z, digits) for z in emb.roots],
            "precision_digits": emb.digits,
            "working_dps": emb.dps,
        },
        "units": {
            "fundamental_units": [list(u) for u in cg.units.fundamental_units],
            "norms": list(cg.units.norms),
            "torsion_order": cg.units.torsion_order,
            "method": cg.units.method,
            "coeff_bound": cg.units.coeff_bound,
        },
        "torus_gens": vecs(cg.torus_gens),
        "lattice_gens": vecs(cg.lattice_gens),
        "det_abs": [mpmath.nstr(x, digits) for x in cg.det_abs],
        "totally_real": cg.totally_real,
        "m": cg.m_claim,
        "notes": list(cg.notes),
    }
    if cg.borel:
        doc["identified_as"] = cg.borel
    if closure is not None:
        doc["torus_closure"] = {
            "m": closure.m,
            "flag": closure.flag,
            "relation": list(closure.relation) if closure.relation else None,
            "torsion_order": closure.torsion_order,
            "exponent_bound": closure.exponent_bound,
        }
    if cg.cocompact_variant:
        cc = cg.cocompact_variant
        doc["cocompact"] = {
            "delta_units": cc["delta_units"],
            "delta_gens": vecs(cc["delta_gens"]),
            "delta_dets": [complex_pair(z, digits) for z in cc["delta_dets"]],
            "lattice_gens": vecs(cc["lattice_gens"]),
        }
    return doc


def construct(poly, coeff_bound: int = 10, digits: int = DEFAULT_DIGITS, exponent_bound: int = 20):
    """Full pipeline: field, embeddings, units, construction and closure evidence."""
    nf = number_field(poly)
    emb = compute_embeddings(nf.poly, digits)
    units = find_fundamental_units(nf.poly, coeff_bound, emb=emb)
    if units.rank == 0:
        raise RankDeficient("unit rank r = 0: the unit group is finite and gives no torus part")
    cg = build_construction(nf, units, emb)
    closure = torus_closure_dim(units, emb, exponent_bound)
    return cg, emb, closure
