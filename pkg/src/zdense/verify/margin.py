"""Discreteness margin: how close short words come to the identity."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ExplosionGuard
from .generators import AFFINE, GeneratorSet, letters

DEFAULT_CAP = 10_000_000
ROUND_DIGITS = 12
IDENTITY_TOL = 1e-10


@dataclass
class MarginReport:
    word_length: int
    ball_radius: float
    min_distance: float  # math.inf when no nontrivial element lies in the ball
    attained_word: tuple
    element_count: int
    in_ball: int = 0
    products: int = 0
    relations: int = 0
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "word_length": self.word_length,
            "ball_radius": self.ball_radius,
            "min_distance": "inf" if math.isinf(self.min_distance) else self.min_distance,
            "attained_word": list(self.attained_word),
            "element_count": self.element_count,
            "in_ball": self.in_ball,
            "products": self.products,
            "relations": self.relations,
            "notes": list(self.notes),
        }


def _keys(M: np.ndarray, v: np.ndarray) -> list[bytes]:
    """Hash keys after rounding every coordinate at 1e-12 relative to the element's scale."""
    flat = np.concatenate([M.reshape(len(M), -1), v.reshape(len(v), -1)], axis=1)
    parts = np.concatenate([flat.real, flat.imag], axis=1)
    scale = np.maximum(1.0, np.max(np.abs(parts), axis=1, keepdims=True))
    scale = 2.0 ** np.ceil(np.log2(scale))
    q = np.round(parts / scale * 10**ROUND_DIGITS).astype(np.int64)
    return [row.tobytes() for row in q]


def _scale(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    flat = np.concatenate([M.reshape(len(M), -1), v.reshape(len(v), -1)], axis=1)
    return np.maximum(1.0, np.max(np.abs(flat), axis=1))


def _distance(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    n = M.shape[1]
    op = np.linalg.norm(M - np.eye(n), ord=2, axis=(1, 2))
    if v.shape[1] == 0:
        return op
    return np.maximum(op, np.linalg.norm(v, axis=1))


def discreteness_margin(gens: GeneratorSet, L: int, R: float, cap: int = DEFAULT_CAP) -> MarginReport:
    """Minimum distance to the identity over nontrivial elements of word length <= L within radius R.

    Elements are enumerated breadth first, one representative per distinct
    element (the lexicographically first word of minimal length).  A generator
    equal to the identity gives distance 0 at its length-1 word.
    """
    if L < 1 or R <= 0:
        raise ValueError("need L >= 1 and R > 0")
    els, names = letters(gens)
    n = gens.linear[0].shape[0]
    tdim = gens.dim if gens.kind == AFFINE else 0
    LM = np.array([e[0] for e in els])
    LV = np.array([e[1] for e in els]).reshape(len(els), tdim)

    letter_scale = _scale(LM, LV)
    ident_M = np.eye(n, dtype=complex)[None]
    ident_v = np.zeros((1, tdim), dtype=complex)
    seen = set(_keys(ident_M, ident_v))
    report = MarginReport(L, R, math.inf, (), 0)

    # degenerate input: a generator that is itself the identity
    for i, k in enumerate(_keys(LM[: len(gens)], LV[: len(gens)])):
        if k in seen:
            report.min_distance = 0.0
            report.attained_word = (names[i],)
            report.notes.append(f"generator {names[i]} equals the identity")
            break

    frontier_M, frontier_v = ident_M, ident_v
    frontier_w: list[tuple] = [()]
    best = (math.inf, ())
    for length in range(1, L + 1):
        k = len(els)
        count = len(frontier_w) * k
        report.products += count
        if report.products > cap:
            raise ExplosionGuard(f"{report.products} products exceed the cap {cap} at word length {length}")
        # new[w, a] = frontier[w] * letter[a]
        M = np.einsum("wij,ajk->waik", frontier_M, LM).reshape(-1, n, n)
        if tdim:
            v = (frontier_v[:, None, :] + np.einsum("wij,aj->wai", frontier_M, LV)).reshape(-1, tdim)
        else:
            v = np.zeros((len(M), 0), dtype=complex)
        keys = _keys(M, v)
        # round-off can push a product that equals the identity off the hash grid
        scale = np.outer(_scale(frontier_M, frontier_v), letter_scale).reshape(-1)
        near_identity = _distance(M, v) < IDENTITY_TOL * scale
        keep = []
        for idx, key in enumerate(keys):
            if key in seen or near_identity[idx]:
                report.relations += 1
                continue
            seen.add(key)
            keep.append(idx)
        if not keep:
            frontier_w = []
            break
        keep_arr = np.array(keep)
        frontier_M, frontier_v = M[keep_arr], v[keep_arr]
        frontier_w = [frontier_w[i // k] + (names[i % k],) for i in keep]
        report.element_count += len(keep)
        dist = _distance(frontier_M, frontier_v)
        inside = np.where(dist <= R)[0]
        report.in_ball += len(inside)
        if len(inside):
            j = inside[np.argmin(dist[inside])]
            if dist[j] < best[0]:
                best = (float(dist[j]), frontier_w[j])
    if report.min_distance != 0.0:
        report.min_distance, report.attained_word = best
    return report
