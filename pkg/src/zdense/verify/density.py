"""Evidence for Zariski density of a generated subgroup of T x| V or S x| V."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..errors import ShapeMismatch
from ..group_spec import BorelOf, Semisimple, Solvable, derived_series, solvable_part
from ..linalg import numeric_rank
from ..relations import relation_rank
from .generators import AFFINE, GeneratorSet, compose, inverse
from .independence import multiplicative_independence
from .pingpong import pingpong_certificate

SUPPORT_TOL = 1e-9


@dataclass
class DensityReport:
    torus: bool
    translation: bool
    full_support: bool
    details: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.torus and self.translation and self.full_support

    def to_json(self) -> dict:
        return {
            "torus": self.torus,
            "translation": self.translation,
            "full_support": self.full_support,
            "passed": self.passed,
            "details": self.details,
            "bounds": self.bounds,
        }


def _commutator(g, h):
    return compose(compose(g, h), compose(inverse(g), inverse(h)))


def _translation_pool(gens: GeneratorSet) -> list[np.ndarray]:
    """Translation parts of the generators, their pairwise commutators, and conjugates of pure translations."""
    els = list(zip(gens.linear, gens.translation))
    n = gens.dim
    pool = [v for _, v in els]
    for g in els:
        for h in els:
            pool.append(_commutator(g, h)[1])
    pure = [v for M, v in els if np.allclose(M, np.eye(n))]
    for M, _ in els:
        for v in pure:
            pool.append(M @ v)
    return [v for v in pool if np.linalg.norm(v) > SUPPORT_TOL]


def _full_support(v) -> bool:
    scale = max(1.0, float(np.max(np.abs(v))))
    return bool(np.all(np.abs(v) > SUPPORT_TOL * scale))


def _torus_evidence_diagonal(gens, idx, split_rank, bound) -> tuple[bool, dict]:
    coords = [[gens.linear[i][c, c] for i in idx] for c in range(gens.dim)]
    per_coord = []
    for c, vals in enumerate(coords):
        res = multiplicative_independence(vals, bound)
        per_coord.append(res.to_json())
    ok = all(r["independent"] for r in per_coord)
    rows = [[gens.linear[i][c, c] for c in range(gens.dim)] for i in idx]
    rank, witnesses = relation_rank(rows, bound, allow_torsion=True, dps=15)
    closure_dim = gens.dim - rank
    detail = {
        "per_coordinate": per_coord,
        "character_relations": witnesses,
        "closure_dim_upper_bound": closure_dim,
    }
    if split_rank is not None:
        detail["required_dim"] = split_rank
        ok = ok and closure_dim >= split_rank
    return ok, detail


def _torus_evidence_sl2(gens) -> tuple[bool, dict]:
    """A ping-pong certified pair of linear parts generates a free, hence Zariski-dense, subgroup of SL_2."""
    if gens.exact is None:
        return False, {"reason": "non-diagonal linear parts need exact integer matrices"}
    mats = [[list(r) for r in M] for M in gens.exact]
    n = len(mats)
    for i in range(n):
        for j in range(i + 1, n):
            cert = pingpong_certificate(mats[i], mats[j])
            if cert:
                return True, {"pingpong_pair": [gens.labels[i], gens.labels[j]], "certificate": cert.to_json()}
    return False, {"reason": "no pair of linear parts is ping-pong certified"}


def lemma2_rank(gens: GeneratorSet, spec) -> Optional[dict]:
    """Compare the span of commutator translations with the symbolic G' (solvable specs only)."""
    if not isinstance(spec, Solvable):
        return None
    terms = derived_series(spec)
    sym = len(terms[1].basis) if len(terms) > 1 else 0
    els = list(zip(gens.linear, gens.translation))
    els = els + [inverse(e) for e in els]
    comm = [_commutator(g, h) for g in els for h in els]
    comm2 = [_commutator(c, g) for c in comm[: 4 * len(els)] for g in els]
    vecs = [c[1] for c in comm + comm2 if np.linalg.norm(c[1]) > SUPPORT_TOL]
    num = numeric_rank(np.array(vecs)) if vecs else 0
    return {"symbolic_dim": sym, "numeric_rank": num, "equal": sym == num}


def density_check(gens: GeneratorSet, spec=None, exponent_bound: int = 20) -> DensityReport:
    if gens.kind != AFFINE:
        raise ShapeMismatch("density evidence needs an affine generator set (linear part, translation)")
    split_rank = None
    if spec is not None:
        if isinstance(spec, (Semisimple, BorelOf)):
            raise ShapeMismatch(f"{spec.variant} spec has no vector-group part to compare with")
        s = solvable_part(spec)
        if s.n != gens.dim:
            raise ShapeMismatch(f"generators act on C^{gens.dim}, spec has unipotent dim {s.n}")
        if isinstance(spec, Solvable):
            split_rank = s.torus.split_rank
    bounds = {"exponent_bound": exponent_bound, "support_tol": SUPPORT_TOL}
    idx = gens.torus_indices()
    details: dict = {}
    if not idx:
        torus_ok = split_rank == 0
        details["torus"] = {"reason": "no generator has a nontrivial linear part"}
    elif gens.diagonal:
        torus_ok, details["torus"] = _torus_evidence_diagonal(gens, idx, split_rank, exponent_bound)
    else:
        torus_ok, details["torus"] = _torus_evidence_sl2(gens)

    pool = _translation_pool(gens)
    rank = numeric_rank(np.array(pool)) if pool else 0
    translation_ok = rank == gens.dim
    details["translation"] = {"complex_rank": rank, "dim": gens.dim, "vectors": len(pool)}

    candidates = pool + ([np.sum(pool, axis=0)] if pool else [])
    witness = next((k for k, v in enumerate(candidates) if _full_support(v)), None)
    support_ok = witness is not None
    details["full_support"] = {"witness_index": witness}
    if spec is not None:
        details["lemma2"] = lemma2_rank(gens, spec)
    return DensityReport(torus_ok, translation_ok, support_ok, details, bounds)
