"""Executable checks of the characteristic-p examples, each verified at an explicit truncation."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass

from ..linalg import nullspace_mod_p
from .laurent import TruncatedLaurent
from .witt import WittVector2

# ex1: Frobenius cosets in F_p((t))^*


def _s_elements(p: int, N: int, max_elements: int | None):
    ks = [k for k in range(1, N) if k * p + 1 < N]
    out = []
    for combo in itertools.product(range(p), repeat=len(ks)):
        terms = {0: 1, 1: 1}
        terms.update({k * p: a for k, a in zip(ks, combo) if a})
        out.append((combo, TruncatedLaurent.from_dict(p, terms, N)))
        if max_elements is not None and len(out) >= max_elements:
            break
    return ks, out


def _is_pth_power_shape(x: TruncatedLaurent) -> bool:
    return all(k % x.p == 0 for k in x.support())


def ex1_frobenius_coset_scan(p: int, N: int, max_elements: int | None = None) -> dict:
    """Pairwise quotients of S = {1 + t + sum a_k t^(kp)} are never p-th powers modulo t^N.

    Only k with kp + 1 < N are enumerated: two elements differing first at t^(kp)
    have a quotient whose t^(kp+1) coefficient is nonzero, which must lie inside the horizon.
    """
    if N < 2 * p:
        raise ValueError("need N >= 2p")
    ks, elems = _s_elements(p, N, max_elements)
    failures = []
    pairs = 0
    for (ca, a), (cb, b) in itertools.combinations(elems, 2):
        pairs += 1
        q = a / b
        if _is_pth_power_shape(q):
            failures.append({"a": list(ca), "b": list(cb), "quotient": str(q)})
    return {
        "example": "ex1",
        "p": p,
        "horizon": N,
        "free_indices": [k * p for k in ks],
        "elements": len(elems),
        "pairs_checked": pairs,
        "failures": failures,
        "distinct_cosets": len(elems) if not failures else None,
        "verified": not failures,
    }


# ex3: x^p - x = t y^p

EX3_TEMPLATES = ("a_k^p=a_{kp}", "-a_{kp+1}=b_k^p", "a_k=0 for k mod p not in {0,1}")


@dataclass(frozen=True)
class Ex3Equation:
    kind: int  # index into EX3_TEMPLATES
    k: int
    p: int

    def render(self) -> str:
        k, p = self.k, self.p
        if self.kind == 0:
            return f"a_{{{k}}}^{p}=a_{{{k * p}}}"
        if self.kind == 1:
            return f"-a_{{{k * p + 1}}}=b_{{{k}}}^{p}"
        return f"a_{{{k}}}=0"

    def terms(self) -> list[tuple]:
        """Linear form over F_p (a_k^p = a_k there) as (('a'|'b', index), coefficient)."""
        k, p = self.k, self.p
        if self.kind == 0:
            return [(("a", k), 1), (("a", k * p), -1)]
        if self.kind == 1:
            return [(("a", k * p + 1), 1), (("b", k), 1)]
        return [(("a", k), 1)]


def ex3_equations(p: int, N: int) -> list[Ex3Equation]:
    """Coefficient equations of x^p - x = t y^p at every exponent m in [-pN, N].

    Coefficients below -N are zero (the solution space is series supported in [-N, N]),
    coefficients at or above N are unknown and their equations are dropped.
    """
    eqs = []
    for m in range(-p * N, N):
        if m % p == 0:
            eqs.append(Ex3Equation(0, m // p, p))
        elif m % p == 1:
            eqs.append(Ex3Equation(1, (m - 1) // p, p))
        else:
            eqs.append(Ex3Equation(2, m, p))
    return eqs


def _value(coeffs: dict, key, N: int) -> int:
    _, i = key
    if i < -N:
        return 0
    return coeffs.get(key, 0)


def ex3_check_candidate(p: int, N: int, a: dict, b: dict) -> dict:
    """Membership of x = sum a_k t^k, y = sum b_k t^k at truncation N; reports the first violated equation."""
    coeffs = {("a", k): v % p for k, v in a.items()}
    coeffs.update({("b", k): v % p for k, v in b.items()})
    for key in coeffs:
        if not -N <= key[1] < N:
            raise ValueError(f"coefficient {key} outside the window [-N, N)")
    for eq in ex3_equations(p, N):
        if sum(c * _value(coeffs, key, N) for key, c in eq.terms()) % p:
            return {"member": False, "violated": eq.render()}
    return {"member": True, "violated": None}


def ex3_scan(p: int, N: int) -> dict:
    """Solve the truncated system and check that all solutions live in O x O."""
    idx = {}
    for name in ("a", "b"):
        for k in range(-N, N):
            idx[(name, k)] = len(idx)
    rows = []
    for eq in ex3_equations(p, N):
        row = [0] * len(idx)
        for key, c in eq.terms():
            if key in idx:
                row[idx[key]] = (row[idx[key]] + c) % p
        rows.append(row)
    basis = nullspace_mod_p(rows, len(idx), p)
    keys = list(idx)
    negative_ok = all(v[idx[key]] == 0 for v in basis for key in keys if key[1] < 0)
    pattern_ok = all(v[idx[("a", k)]] == 0 for v in basis for k in range(-N, N) if k % p not in (0, 1))
    min_val = {"x": None, "y": None}
    for name, coord in (("a", "x"), ("b", "y")):
        support = [key[1] for key in keys if key[0] == name and any(v[idx[key]] for v in basis)]
        min_val[coord] = min(support) if support else None
    return {
        "example": "ex3",
        "p": p,
        "horizon": N,
        "window": [-N, N - 1],
        "equations": len(rows),
        "templates": list(EX3_TEMPLATES),
        "solution_space_dim": len(basis),
        "solution_count": p ** len(basis),
        "min_valuation": min_val,
        "valuations_nonnegative": negative_ok,
        "index_pattern_holds": pattern_ok,
        "verified": negative_ok and pattern_ok,
    }


# ex4: H = {(x, y, z) : x^p - x = t y} inside G_a x W_2


def ex4_phi(x: TruncatedLaurent, y: TruncatedLaurent, z: TruncatedLaurent) -> tuple:
    """p-th power of (x, (y, z)) under the group law of G_a x W_2, by p-fold addition."""
    p = x.p
    gx = x * p
    w = WittVector2(y, z, p)
    acc = w
    for _ in range(p - 1):
        acc = acc + w
    return gx, acc.x0, acc.x1


def ex4_element(x: TruncatedLaurent) -> TruncatedLaurent:
    """The y with x^p - x = t y."""
    return (x ** x.p - x).shift(-1)


def ex4_ppower_scan(p: int, N: int, sample_size: int = 200, seed: int = 0, terms: int = 4) -> dict:
    """Sample x with valuation in [-N, N], apply phi, and record image valuations.

    Checks exactly that phi(x, y, z) = (0, 0, y^p) on every sample and that A = {(0, 0, z)}
    is killed by phi.  Image valuations are reported as measured.
    """
    rng = random.Random(seed)
    horizon = N + terms + 2
    samples = []
    law_ok = kernel_ok = member_ok = True
    hist: Counter = Counter()
    for _ in range(sample_size):
        v = rng.randint(-N, N)
        coeffs = {v: rng.randrange(1, p)}
        for k in range(v + 1, min(v + terms, horizon)):
            coeffs[k] = rng.randrange(p)
        x = TruncatedLaurent.from_dict(p, coeffs, horizon)
        y = ex4_element(x)
        z = TruncatedLaurent.from_dict(p, {rng.randint(-N, N): rng.randrange(1, p)}, horizon)
        member_ok &= (x ** p - x - y.shift(1)).is_zero
        gx, g0, g1 = ex4_phi(x, y, z)
        yp = y ** p
        law_ok &= gx.is_zero and g0.is_zero and (g1 - yp).is_zero
        zero = TruncatedLaurent.zero(p, horizon)
        kx, k0, k1 = ex4_phi(zero, zero, z)
        kernel_ok &= kx.is_zero and k0.is_zero and k1.is_zero
        val = None if yp.is_zero else yp.valuation()
        hist[val] += 1
        samples.append({"val_x": x.valuation(), "val_y": None if y.is_zero else y.valuation(),
                        "val_image": val, "image_horizon": yp.N})
    vals = [s["val_image"] for s in samples if s["val_image"] is not None]
    neg = [s for s in samples if s["val_x"] < 0]
    return {
        "example": "ex4",
        "p": p,
        "horizon": N,
        "series_horizon": horizon,
        "sample_size": sample_size,
        "seed": seed,
        "membership_holds": member_ok,
        "phi_law_holds": law_ok,
        "kernel_contains_A": kernel_ok,
        "image_valuation_min": min(vals) if vals else None,
        "image_valuation_max": max(vals) if vals else None,
        "image_valuation_histogram": {str(k): c for k, c in sorted(hist.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))},
        "negative_x_samples": len(neg),
        "image_bounded_on_sample": all(v >= 0 for v in vals),
        "note": "image valuations are measured only; when val(x) < 0 they equal p*(p*val(x) - 1)",
        "verified": member_ok and law_ok and kernel_ok,
    }
