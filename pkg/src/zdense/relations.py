"""Bounded search for multiplicative relations among complex numbers."""
from __future__ import annotations

import math
from typing import Optional, Sequence

import mpmath
import numpy as np

from .errors import ExplosionGuard

MAX_TORSION_ORDER = 24
MAX_VECTORS = 5_000_000


def shell(k: int, s: int) -> np.ndarray:
    """Integer vectors of max-norm exactly s with first nonzero entry positive, lexicographic."""
    if s == 0:
        return np.zeros((0, k), dtype=np.int64)
    rng = np.arange(-s, s + 1)
    grid = np.array(np.meshgrid(*([rng] * k), indexing="ij")).reshape(k, -1).T
    grid = grid[np.max(np.abs(grid), axis=1) == s]
    first = np.argmax(grid != 0, axis=1)
    grid = grid[grid[np.arange(len(grid)), first] > 0]
    return grid  # meshgrid with ij indexing is already lexicographic


def _tolerance(dps: int) -> mpmath.mpf:
    return mpmath.mpf("1e-20") if dps >= 40 else mpmath.mpf("1e-9")


def _root_order(z, tol, allow_torsion: bool) -> Optional[int]:
    top = MAX_TORSION_ORDER if allow_torsion else 1
    for k in range(1, top + 1):
        if abs(z**k - 1) < tol * k:
            return k
    return None


def find_relation(
    rows: Sequence[Sequence], bound: int, allow_torsion: bool = False, dps: int = 50
) -> Optional[tuple[list[int], int]]:
    """First n (max-norm, then lexicographic) with prod_i row[i]^n_i a root of unity in every row.

    Returns (n, order) where order is the lcm of the root-of-unity orders (1 for an
    exact relation), or None when no vector with |n_i| <= bound works.  With
    allow_torsion=False only exact relations (order 1) count.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return None
    k = len(rows[0])
    if (2 * bound + 1) ** k > MAX_VECTORS:
        raise ExplosionGuard(f"{(2 * bound + 1) ** k} exponent vectors exceed cap {MAX_VECTORS}")
    logs = np.array([[math.log(abs(complex(v))) for v in r] for r in rows])
    args = np.array([[np.angle(complex(v)) / (2 * np.pi) for v in r] for r in rows])
    orders = range(1, (MAX_TORSION_ORDER if allow_torsion else 1) + 1)
    with mpmath.workdps(dps):
        tol = _tolerance(dps)
        for s in range(1, bound + 1):
            vecs = shell(k, s)
            mod_ok = np.all(np.abs(vecs @ logs.T) < 1e-7 * s, axis=1)
            phase = vecs @ args.T
            arg_ok = np.zeros(len(vecs), dtype=bool)
            for q in orders:
                x = phase * q
                arg_ok |= np.all(np.abs(x - np.round(x)) < 1e-7 * s * q, axis=1)
            for idx in np.where(mod_ok & arg_ok)[0]:
                n = [int(x) for x in vecs[idx]]
                order = 1
                for r in rows:
                    z = mpmath.fprod(mpmath.mpmathify(v) ** e for v, e in zip(r, n))
                    o = _root_order(z, tol, allow_torsion)
                    if o is None:
                        break
                    order = order * o // math.gcd(order, o)
                else:
                    return n, order
    return None


def relation_vectors(k: int, bound: int):
    """All canonical nonzero vectors with |n_i| <= bound, in search order."""
    for s in range(1, bound + 1):
        for v in shell(k, s):
            yield tuple(int(x) for x in v)


def count_vectors(k: int, bound: int) -> int:
    return ((2 * bound + 1) ** k - 1) // 2



def relation_rank(rows: Sequence[Sequence], bound: int, allow_torsion: bool = True, dps: int = 50) -> tuple[int, list]:
    """Rank of the lattice spanned by all relations with |n_i| <= bound, and a basis of witnesses."""
    from .linalg import rank_rational

    rows = [list(r) for r in rows]
    if not rows:
        return 0, []
    k = len(rows[0])
    if (2 * bound + 1) ** k > MAX_VECTORS:
        raise ExplosionGuard(f"{(2 * bound + 1) ** k} exponent vectors exceed cap {MAX_VECTORS}")
    logs = np.array([[math.log(abs(complex(v))) for v in r] for r in rows])
    args = np.array([[np.angle(complex(v)) / (2 * np.pi) for v in r] for r in rows])
    orders = range(1, (MAX_TORSION_ORDER if allow_torsion else 1) + 1)
    basis: list = []
    with mpmath.workdps(dps):
        tol = _tolerance(dps)
        for s in range(1, bound + 1):
            vecs = shell(k, s)
            ok = np.all(np.abs(vecs @ logs.T) < 1e-7 * s, axis=1)
            phase = vecs @ args.T
            arg_ok = np.zeros(len(vecs), dtype=bool)
            for q in orders:
                x = phase * q
                arg_ok |= np.all(np.abs(x - np.round(x)) < 1e-7 * s * q, axis=1)
            for idx in np.where(ok & arg_ok)[0]:
                n = [int(x) for x in vecs[idx]]
                if rank_rational(basis + [n]) == len(basis):
                    continue
                if all(
                    _root_order(mpmath.fprod(mpmath.mpmathify(v) ** e for v, e in zip(r, n)), tol, allow_torsion)
                    for r in rows
                ):
                    basis.append(n)
                    if len(basis) == k:
                        return k, basis
    return len(basis), basis
