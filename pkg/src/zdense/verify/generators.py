"""Generator sets of affine groups GL(V) x| V and of SL_2."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import mpmath
import numpy as np

AFFINE = "Affine"
MATRIX2 = "Matrix2x2"


@dataclass
class GeneratorSet:
    """Elements are pairs (linear part, translation) composed as affine maps x -> Mx + v.

    For ``Matrix2x2`` the translation is empty.  ``exact`` optionally holds
    integer matrices for the linear parts (exact mode for 2x2 words).
    """

    kind: str
    dim: int
    linear: list
    translation: list
    labels: list
    exact: Optional[list] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.linear = [np.asarray(M, dtype=complex) for M in self.linear]
        tdim = self.dim if self.kind == AFFINE else 0
        self.translation = [np.asarray(v, dtype=complex).reshape(tdim) for v in self.translation]
        if len(self.linear) != len(self.translation) or len(self.linear) != len(self.labels):
            raise ValueError("linear parts, translations and labels must have equal length")

    def __len__(self):
        return len(self.linear)

    @property
    def diagonal(self) -> bool:
        return all(np.count_nonzero(M - np.diag(np.diag(M))) == 0 for M in self.linear)

    def torus_indices(self) -> list[int]:
        """Generators whose linear part is not the identity."""
        n = self.linear[0].shape[0] if self.linear else 0
        return [i for i, M in enumerate(self.linear) if not np.allclose(M, np.eye(n), atol=1e-14)]

    @classmethod
    def affine(cls, linear, translation, labels=None, meta=None) -> "GeneratorSet":
        dim = len(translation[0]) if translation else 0
        labels = labels or [f"g{i}" for i in range(len(linear))]
        return cls(AFFINE, dim, list(linear), list(translation), list(labels), meta=dict(meta or {}))

    @classmethod
    def matrices(cls, mats, labels=None, exact=True) -> "GeneratorSet":
        labels = labels or [chr(ord("A") + i) for i in range(len(mats))]
        ex = [tuple(tuple(int(x) for x in row) for row in M) for M in mats] if exact else None
        return cls(MATRIX2, 2, [np.array(M, dtype=complex) for M in mats], [[] for _ in mats], list(labels), ex)

    def to_json(self) -> dict:
        def c(z):
            return [repr(float(z.real)), repr(float(z.imag))]

        return {
            "kind": self.kind,
            "dim": self.dim,
            "elements": [
                {"label": lab, "linear": [[c(z) for z in row] for row in M], "translation": [c(z) for z in v]}
                for lab, M, v in zip(self.labels, self.linear, self.translation)
            ],
            **({"exact": [[list(r) for r in M] for M in self.exact]} if self.exact else {}),
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GeneratorSet":
        def z(p):
            return complex(float(p[0]), float(p[1]))

        els = doc["elements"]
        exact = doc.get("exact")
        return cls(
            doc["kind"],
            doc["dim"],
            [[[z(x) for x in row] for row in e["linear"]] for e in els],
            [[z(x) for x in e["translation"]] for e in els],
            [e["label"] for e in els],
            [tuple(tuple(r) for r in M) for M in exact] if exact else None,
            doc.get("meta", {}),
        )


def compose(a, b):
    """(M1, v1)(M2, v2) = (M1 M2, v1 + M1 v2)."""
    return a[0] @ b[0], a[1] + a[0] @ b[1]


def _inv_matrix(M: np.ndarray) -> np.ndarray:
    if np.count_nonzero(M - np.diag(np.diag(M))) == 0:
        return np.diag(1 / np.diag(M))
    if M.shape == (2, 2):
        # adjugate: exact for integer entries with unit determinant
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]]) / det
    return np.linalg.inv(M)


def inverse(a):
    Minv = _inv_matrix(a[0])
    if a[1].size == 0:
        return Minv, a[1]
    return Minv, -Minv @ a[1]


def letters(gens: GeneratorSet):
    """Generators followed by their inverses, with printable names."""
    els = list(zip(gens.linear, gens.translation))
    names = list(gens.labels) + [f"{lab}^-1" for lab in gens.labels]
    return els + [inverse(e) for e in els], names


def complex_pair(z, digits: int) -> list[str]:
    """[re, im] as decimal strings at ``digits`` significant digits."""
    with mpmath.workdps(digits + 10):
        z = mpmath.mpc(z)
        return [mpmath.nstr(z.real, digits, strip_zeros=False), mpmath.nstr(z.imag, digits, strip_zeros=False)]


def from_construction_doc(doc: dict, variant: str = "auto") -> GeneratorSet:
    """Turn a ``construct`` output document into affine generators (diagonal torus part, lattice)."""
    def z(p):
        return complex(float(p[0]), float(p[1]))

    use = variant
    if use == "auto":
        use = "cocompact" if doc.get("cocompact") else "full"
    if use == "cocompact":
        if not doc.get("cocompact"):
            raise ValueError("document has no cocompact variant")
        torus = doc["cocompact"]["delta_gens"]
        lattice = doc["cocompact"]["lattice_gens"]
    else:
        torus = doc["torus_gens"]
        lattice = doc["lattice_gens"]
    n = len(lattice[0])
    linear, trans, labels = [], [], []
    for i, t in enumerate(torus):
        linear.append(np.diag([z(x) for x in t]))
        trans.append(np.zeros(n))
        labels.append(f"t{i + 1}")
    for j, v in enumerate(lattice):
        linear.append(np.eye(n))
        trans.append([z(x) for x in v])
        labels.append(f"v{j + 1}")
    return GeneratorSet.affine(linear, trans, labels, meta={"source": "construct", "variant": use})
