"""Ping-pong certificates for pairs of SL_2 matrices acting on the real projective line."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

INF = math.inf


@dataclass
class PingPongResult:
    certified: bool
    regions: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        return self.certified

    def to_json(self) -> dict:
        def fmt(x):
            return str(x) if not isinstance(x, float) else ("inf" if x > 0 else "-inf")

        return {
            "certified": self.certified,
            "reason": self.reason,
            "regions": {k: [[fmt(a), fmt(b)] for a, b in v] for k, v in self.regions.items()},
            "checks": [[name, ok] for name, ok in self.checks],
        }


def _exact(M):
    return [[Fraction(x) for x in row] for row in M]


def _inv(M):
    (a, b), (c, d) = M
    return [[d, -b], [-c, a]]


def _mobius(M, x):
    (a, b), (c, d) = M
    if x in (INF, -INF):
        return a / c if c != 0 else (x if a / d > 0 else -x)
    den = c * x + d
    if den == 0:
        return None
    return (a * x + b) / den


def _image(M, iv) -> Optional[tuple]:
    """Image of the open interval iv = (lo, hi) of R, or None if it passes through infinity."""
    (a, b), (c, d) = M
    lo, hi = iv
    if c != 0:
        pole = -d / c
        if lo < pole < hi:
            return None
        left = -INF if lo == pole else _mobius(M, lo)
        right = INF if hi == pole else _mobius(M, hi)
    else:
        left, right = _mobius(M, lo), _mobius(M, hi)
    # det 1 means increasing on each branch
    if left is None or right is None or not left < right:
        return None
    return left, right


def _inside(iv, target) -> bool:
    return target[0] <= iv[0] and iv[1] <= target[1]


def _disjoint(u, v) -> bool:
    return u[1] <= v[0] or v[1] <= u[0]


def regions(M) -> Optional[tuple]:
    """(attracting, repelling) open intervals for one generator, or None if no standard choice applies."""
    (a, b), (c, d) = M
    if c != 0:
        r = 1 / abs(c)
        rep = (-d / c - r, -d / c + r)  # |cx + d| < 1
        att = (a / c - r, a / c + r)  # |-cx + a| < 1
        return att, rep
    if a == d and abs(a) == 1 and b != 0:
        t = b / d
        half = abs(t) / 2
        pos, neg = (half, INF), (-INF, -half)
        return (pos, neg) if t > 0 else (neg, pos)
    return None


def pingpong_certificate(A, B) -> PingPongResult:
    """Certify that A and B freely generate a free group of rank 2.

    With X_g = g+ u g-, checks g(g+) in g+, g^-1(g-) in g-, g(X_h) in g+,
    g^-1(X_h) in g-, and that all four intervals are pairwise disjoint.  Then
    every nonzero power of g maps X_h into X_g.  False means "not certified".
    """
    A, B = _exact(A), _exact(B)
    for name, M in (("A", A), ("B", B)):
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        if det != 1:
            return PingPongResult(False, reason=f"{name} has determinant {det}, need 1")
    ra, rb = regions(A), regions(B)
    if ra is None or rb is None:
        return PingPongResult(False, reason="no standard ping-pong regions (identity, elliptic or diagonal generator)")
    res = PingPongResult(False, {"A+": [ra[0]], "A-": [ra[1]], "B+": [rb[0]], "B-": [rb[1]]})
    four = [ra[0], ra[1], rb[0], rb[1]]
    disjoint = all(_disjoint(u, v) for i, u in enumerate(four) for v in four[i + 1:])
    res.checks.append(("regions pairwise disjoint", disjoint))
    for name, g, (gp, gm), other in (("A", A, ra, rb), ("B", B, rb, ra)):
        gi = _inv(g)
        for label, M, src, dst in (
            (f"{name}({name}+) in {name}+", g, [gp], gp),
            (f"{name}^-1({name}-) in {name}-", gi, [gm], gm),
            (f"{name}(X_other) in {name}+", g, list(other), gp),
            (f"{name}^-1(X_other) in {name}-", gi, list(other), gm),
        ):
            ok = True
            for iv in src:
                img = _image(M, iv)
                ok = ok and img is not None and _inside(img, dst)
            res.checks.append((label, ok))
    res.certified = all(ok for _, ok in res.checks)
    if not res.certified:
        res.reason = "failed: " + ", ".join(name for name, ok in res.checks if not ok)
    return res


def identity_word_search(A, B, max_len: int = 12) -> list[tuple]:
    """Exact search for nontrivial reduced words of length <= max_len that equal the identity.

    Uses int64 when the entries provably fit, Python integers otherwise.
    Returns the offending words (empty when none exist).
    """
    base = [[[int(x) for x in row] for row in M] for M in (A, B)]
    mats4 = base + [_inv(M) for M in base]
    names = ["A", "B", "A^-1", "B^-1"]
    inverse_of = np.array([2, 3, 0, 1])
    norm = max(abs(x) for M in mats4 for row in M for x in row)
    dtype = np.int64 if (2 * max(norm, 1)) ** max_len < 2**62 else object
    G = np.array(mats4, dtype=dtype)
    I = np.eye(2, dtype=dtype)
    mats = G.copy()
    last = np.arange(4)
    levels = [(np.full(4, -1), np.arange(4))]
    hits = []
    for length in range(1, max_len + 1):
        for j in np.where(np.all(mats == I, axis=(1, 2)))[0]:
            hits.append(tuple(names[a] for a in _word(levels, j)))
        if length == max_len:
            break
        parent = np.repeat(np.arange(len(mats)), 4)
        letter = np.tile(np.arange(4), len(mats))
        ok = letter != inverse_of[last[parent]]
        parent, letter = parent[ok], letter[ok]
        mats = np.einsum("nij,njk->nik", mats[parent], G[letter])
        last = letter
        levels.append((parent, letter))
    return hits


def _word(levels, j) -> list[int]:
    out = []
    for parent, letter in reversed(levels):
        out.append(int(letter[j]))
        j = parent[j]
    return out[::-1]
