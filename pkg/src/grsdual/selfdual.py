"""Scaling vectors that make a GRS or extended GRS code self-dual.

Both constructions rest on the Lagrange identity: for a finite set A of size n,
sum_{a in A} a^j / δ_A(a) is 0 for j <= n-2 and 1 for j = n-1.

* even n: v_i^2 = λ / δ_A(a_i) kills every Gram entry of GRS_{n/2}(A, v); λ ∈ {1, ω}
  is chosen so that every right-hand side is a square.
* odd n: v_i^2 = -1 / δ_A(a_i) at finite points and v_∞ = 1 make the single
  nonzero sum (exponent n-1) cancel against the ∞ column of GRS_{(n+1)/2}(A ∪ ∞, v).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDimension,
    CharactersNotEqual,
    EvenLength,
    InternalVerificationFailed,
    NegCharacterNotSquare,
    OddLength,
    OddN,
)
from .field import INF, FieldContext, FieldElement, field_of_order
from .grs import EvaluationSet, GrsCode, ScalingVector, all_deltas, is_self_dual, make_code


@dataclass(frozen=True)
class CharacterProfile:
    points: EvaluationSet
    deltas: tuple[FieldElement, ...]
    eta: tuple[int, ...]
    eta_neg: tuple[int, ...]

    @property
    def all_equal(self) -> bool:
        return len(set(self.eta)) == 1

    @property
    def all_neg_square(self) -> bool:
        return all(e == 1 for e in self.eta_neg)


def _as_finite_set(field: FieldContext | None, points) -> EvaluationSet:
    if isinstance(points, EvaluationSet):
        pts = points
    else:
        points = list(points)
        if field is None:
            field = points[0].ctx
        pts = EvaluationSet(field, tuple(points))
    if pts.has_infinity:
        raise BadDimension("the character profile needs a finite evaluation set")
    return pts


def profile(points, field: FieldContext | None = None) -> CharacterProfile:
    pts = _as_finite_set(field, points)
    if len(pts) < 2:
        raise BadDimension("the character profile needs at least two points")
    f = pts.field
    d = all_deltas(pts)
    nd = f.vneg(d)
    eta = tuple(int(x) for x in np.where(f.log[d] % 2 == 0, 1, -1))
    eta_neg = tuple(int(x) for x in np.where(f.log[nd] % 2 == 0, 1, -1))
    return CharacterProfile(pts, tuple(f.from_code(int(c)) for c in d), eta, eta_neg)


def _sqrt_codes(f: FieldContext, logs: np.ndarray) -> np.ndarray:
    logs = logs % (f.q - 1)
    if np.any(logs % 2):
        raise InternalVerificationFailed("expected squares only")
    return f.exp[logs // 2]


def _certify(code: GrsCode) -> GrsCode:
    verdict = is_self_dual(code)
    if not verdict:
        raise InternalVerificationFailed(f"constructed code is not self-dual: {verdict.reason}")
    return code


def lemma2_code(points, field: FieldContext | None = None, provenance: dict | None = None) -> GrsCode:
    """Self-dual GRS_{n/2}(A, v) for an even-size A whose δ_A values share one character."""
    prof = profile(points, field)
    pts = prof.points
    f = pts.field
    n = len(pts)
    if n % 2:
        raise OddLength(f"|A| = {n} is odd")
    if not prof.all_equal:
        raise CharactersNotEqual("η(δ_A(a)) is not constant on A")
    lam_log = 0 if prof.eta[0] == 1 else 1
    dlogs = f.log[np.array([d.value for d in prof.deltas])]
    v = _sqrt_codes(f, lam_log - dlogs)
    prov = dict(provenance or {})
    prov.setdefault("source", "lemma2")
    code = make_code(f, n // 2, pts, ScalingVector.from_codes(f, v), prov)
    return _certify(code)


def lemma2_scaling(points, field: FieldContext | None = None) -> ScalingVector:
    return lemma2_code(points, field).scaling


def lemma3_code(points, field: FieldContext | None = None, provenance: dict | None = None) -> GrsCode:
    """Self-dual extended GRS_{(n+1)/2}(A ∪ ∞, v) for an odd-size A with every -δ_A(a) a square."""
    prof = profile(points, field)
    pts = prof.points
    f = pts.field
    n = len(pts)
    if n % 2 == 0:
        raise EvenLength(f"|A| = {n} is even")
    if not prof.all_neg_square:
        raise NegCharacterNotSquare("-δ_A(a) is a non-square for some a in A")
    neg_logs = f.log[f.vneg(np.array([d.value for d in prof.deltas]))]
    v = np.append(_sqrt_codes(f, -neg_logs), 1)
    ext = pts.union([INF])
    prov = dict(provenance or {})
    prov.setdefault("source", "lemma3")
    code = make_code(f, (n + 1) // 2, ext, ScalingVector.from_codes(f, v), prov)
    return _certify(code)


def lemma3_scaling(points, field: FieldContext | None = None) -> tuple[EvaluationSet, ScalingVector]:
    code = lemma3_code(points, field)
    return code.points, code.scaling


def pless_exists(q: int, n: int) -> bool:
    """A q-ary self-dual code of even length n exists iff (-1)^(n/2) is a square."""
    if n % 2:
        raise OddN(f"n = {n} is odd")
    if q % 2 == 0:
        raise ValueError("q must be odd")
    f = field_of_order(q)
    return f.quadratic_character(f(-1) ** (n // 2)) == 1
