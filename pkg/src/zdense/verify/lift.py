"""Lifting a free subgroup of S to a discrete Zariski-dense subgroup of S x| V."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import SpanDeficient
from ..linalg import numeric_rank
from .generators import MATRIX2, GeneratorSet
from .pingpong import _inv, pingpong_certificate


def _matmul(X, Y):
    return [[sum(X[i][k] * Y[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


def _power(M, n: int):
    R = [[1, 0], [0, 1]]
    base = M if n >= 0 else _inv(M)
    for _ in range(abs(n)):
        R = _matmul(R, base)
    return R


def _free_word(i: int, n: int) -> str:
    """a_i^n = A^i B^n A^-i as a reduced word; lowercase letters are inverses."""
    b = "B" * n if n > 0 else "b" * (-n)
    return "A" * i + b + "a" * i


def lift_discrete_dense(free_gens: GeneratorSet, kernel_sample, twist_exponents=None) -> GeneratorSet:
    """Generators b_0, b_1, b_i = c_i s_i of a discrete Zariski-dense subgroup of SL_2 x| C^2.

    With A, B the certified free pair, a_i = A^i B A^-i are free generators.
    b_0 = a_0 and b_1 = a_1 sit in the SL_2 factor; for each kernel sample s_i
    (i >= 2) the generator is b_i = (a_i^{n_i}, 0)(1, s_i).
    """
    if free_gens.kind != MATRIX2 or len(free_gens) != 2 or free_gens.exact is None:
        raise ValueError("need an exact Matrix2x2 generator set with two elements")
    A, B = ([list(r) for r in M] for M in free_gens.exact)
    cert = pingpong_certificate(A, B)
    if not cert:
        raise ValueError(f"free generators are not ping-pong certified: {cert.reason}")
    sample = [np.asarray(s, dtype=complex) for s in kernel_sample]
    if not sample:
        return free_gens
    dim = len(sample[0])
    if dim != 2:
        raise ValueError("the standard action of SL_2 needs kernel samples in C^2")
    if numeric_rank(np.array(sample)) < dim:
        raise SpanDeficient(f"kernel sample spans a complex subspace of dimension {numeric_rank(np.array(sample))} < {dim}")
    n_exps = list(twist_exponents or [1] * len(sample))
    if len(n_exps) != len(sample) or any(n < 1 for n in n_exps):
        raise ValueError("need one exponent n_i >= 1 per kernel sample")

    def a(i):
        return _matmul(_matmul(_power(A, i), B), _power(A, -i))

    linear, trans, labels, exact, words = [], [], [], [], []
    for i in (0, 1):
        M = a(i)
        linear.append(np.array(M, dtype=complex))
        trans.append(np.zeros(dim, dtype=complex))
        labels.append(f"b{i}")
        exact.append(M)
        words.append(_free_word(i, 1))
    for j, (s, n) in enumerate(zip(sample, n_exps)):
        i = j + 2
        M = _power(a(i), n)
        Mc = np.array(M, dtype=complex)
        linear.append(Mc)
        trans.append(Mc @ s)
        labels.append(f"b{i}")
        exact.append(M)
        words.append(_free_word(i, n))
    out = GeneratorSet.affine(linear, trans, labels, meta={"free_words": words, "free_pair": [A, B]})
    out.exact = [tuple(tuple(r) for r in M) for M in exact]
    return out


# ---------------------------------------------------------------- injectivity evidence


def _reduce(word: str) -> str:
    out = []
    for ch in word:
        if out and out[-1] == ch.swapcase():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def _inverse_word(w: str) -> str:
    return "".join(ch.swapcase() for ch in reversed(w))


def nielsen_reduced(words) -> bool:
    """Nielsen's conditions on X u X^-1; a Nielsen-reduced set is a free basis of the subgroup it generates."""
    X = list(words) + [_inverse_word(w) for w in words]
    if any(not w for w in words):
        return False
    for i, u in enumerate(X):
        for j, v in enumerate(X):
            uv = _reduce(u + v)
            if not uv:
                continue
            if len(uv) < max(len(u), len(v)):
                return False
            for w in X:
                vw = _reduce(v + w)
                if not vw:
                    continue
                if len(_reduce(u + v + w)) <= len(u) - len(v) + len(w):
                    return False
    return True


@dataclass
class InjectivityReport:
    nielsen: bool
    exhaustive_length: int
    exhaustive_words: int
    exhaustive_ok: bool
    sample_length: int
    sample_size: int
    sample_ok: bool
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.nielsen and self.exhaustive_ok and self.sample_ok

    def to_json(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def _exact_letters(gens: GeneratorSet):
    mats = [[list(r) for r in M] for M in gens.exact]
    return mats + [_inv(M) for M in mats]


def projection_injectivity(gens: GeneratorSet, exhaustive_length: int = 6, sample_length: int = 8,
                           sample_size: int = 20000, seed: int = 0) -> InjectivityReport:
    """Evidence that dropping translations is injective on reduced words in the lifted generators."""
    words = gens.meta.get("free_words", [])
    nielsen = bool(words) and nielsen_reduced(words)
    letters = _exact_letters(gens)
    k = len(gens)
    inv = [(a + k) % (2 * k) for a in range(2 * k)]
    norm = max(abs(x) for M in letters for row in M for x in row)
    if (2 * norm) ** exhaustive_length >= 2**62:
        raise OverflowError("exhaustive length too large for exact int64 products")
    G = np.array(letters, dtype=np.int64)

    # exhaustive: all reduced words up to exhaustive_length give distinct non-identity matrices
    seen = {np.eye(2, dtype=np.int64).tobytes()}
    mats, last = G.copy(), np.arange(2 * k)
    total, ok = 0, True
    for length in range(1, exhaustive_length + 1):
        for m in mats:
            key = m.tobytes()
            if key in seen:
                ok = False
            seen.add(key)
        total += len(mats)
        if length == exhaustive_length:
            break
        parent = np.repeat(np.arange(len(mats)), 2 * k)
        letter = np.tile(np.arange(2 * k), len(mats))
        keep = letter != np.array(inv)[last[parent]]
        parent, letter = parent[keep], letter[keep]
        mats = np.einsum("nij,njk->nik", mats[parent], G[letter])
        last = letter

    # random reduced words of the sample length, compared exactly (Python ints)
    rng = np.random.default_rng(seed)
    sampled = {}
    sample_ok = True
    for _ in range(sample_size):
        w = [int(rng.integers(2 * k))]
        while len(w) < sample_length:
            a = int(rng.integers(2 * k))
            if a != inv[w[-1]]:
                w.append(a)
        M = [[1, 0], [0, 1]]
        for a in w:
            M = _matmul(M, letters[a])
        key = (tuple(M[0]), tuple(M[1]))
        if key == ((1, 0), (0, 1)) or (key in sampled and sampled[key] != tuple(w)):
            sample_ok = False
        sampled[key] = tuple(w)
    rep = InjectivityReport(nielsen, exhaustive_length, total, ok, sample_length, sample_size, sample_ok)
    rep.notes.append("Nielsen-reduced image words generate freely, so the projection is injective on all words")
    return rep
