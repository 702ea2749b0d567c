"""Möbius action of PGL_2(F_q) on F_q ∪ {∞} and transport of GRS codes.

g = (a, b; c, d) acts by t -> (c + d t) / (a + b t).  The induced k x k matrix
g_k has (i, j) entry equal to the coefficient of X^{j-1} in
(a + bX)^{k-i} (c + dX)^{i-1}, and satisfies g_k c_k(t) = δ(t) c_k(g(t)) with the
nonzero multipliers δ produced by :func:`delta_diagonal`.  Consequently
GRS_k(A, v) = GRS_k(gA, δ·v) as codes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    BadDimension,
    FieldTooLarge,
    FullProjectiveLine,
    InternalVerificationFailed,
    NoInfinity,
    NotSelfDual,
    SingularTransform,
)
from .field import INF, FieldContext, FieldElement, is_infinity
from .grs import INF_CODE, EvaluationSet, GrsCode, ScalingVector, columns, is_self_dual, make_code

AUTOMORPHISM_CHECK_MAX_Q = 4096


@dataclass(frozen=True, eq=False)
class MobiusTransform:
    """An invertible 2x2 matrix (a, b; c, d), compared as a projective class.

    The entries are kept as given so that products of matrices stay exact;
    :meth:`canonical` gives the representative whose first nonzero entry
    (in the order a, b, c, d) is 1.
    """

    field: FieldContext
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    def __post_init__(self):
        for name in "abcd":
            x = getattr(self, name)
            if not isinstance(x, FieldElement):
                object.__setattr__(self, name, self.field(x))
            else:
                self.field.check(x)
        if self.det.value == 0:
            raise SingularTransform("ad - bc = 0")

    @classmethod
    def identity(cls, field: FieldContext) -> "MobiusTransform":
        return cls(field, field.one, field.zero, field.zero, field.one)

    @property
    def entries(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return (self.a, self.b, self.c, self.d)

    @property
    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def canonical(self) -> "MobiusTransform":
        lead = next(x for x in self.entries if x.value != 0)
        s = lead.inverse()
        return MobiusTransform(self.field, *(x * s for x in self.entries))

    def __matmul__(self, other: "MobiusTransform") -> "MobiusTransform":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return MobiusTransform(self.field, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __call__(self, t):
        return apply(self, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MobiusTransform):
            return NotImplemented
        return [x.value for x in self.canonical().entries] == [x.value for x in other.canonical().entries]

    def __hash__(self) -> int:
        return hash(tuple(x.value for x in self.canonical().entries))

    def __repr__(self) -> str:
        return f"MobiusTransform({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"

    def to_json(self) -> dict:
        g = self.canonical()
        return {name: getattr(g, name).coeffs for name in "abcd"}


def random_transform(field: FieldContext, rng: np.random.Generator) -> MobiusTransform:
    while True:
        a, b, c, d = (field.from_code(int(x)) for x in rng.integers(0, field.q, size=4))
        if (a * d - b * c).value:
            return MobiusTransform(field, a, b, c, d)


def apply(g: MobiusTransform, t):
    """g(t) on the projective line; with b = 0 the point ∞ is fixed."""
    a, b, c, d = g.entries
    if is_infinity(t):
        if b.value == 0:
            return INF
        return d / b
    den = a + b * t
    if den.value == 0:
        return INF
    return (c + d * t) / den


def _poly_mul_codes(f: FieldContext, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros(len(x) + len(y) - 1, dtype=np.int64)
    for i, xi in enumerate(x):
        out[i:i + len(y)] = f.vadd(out[i:i + len(y)], f.vmul(xi, y))
    return out


def induced_matrix(g: MobiusTransform, k: int) -> np.ndarray:
    """g_k as a k x k array of element codes."""
    f = g.field
    if not 2 <= k <= f.q:
        raise BadDimension(f"need 2 <= k <= q, got k={k}")
    a, b, c, d = (x.value for x in g.entries)
    left = np.array([a, b], dtype=np.int64)
    right = np.array([c, d], dtype=np.int64)
    # powers[e] = coefficients of (a + bX)^e, padded to length k
    lp = [np.array([1], dtype=np.int64)]
    rp = [np.array([1], dtype=np.int64)]
    for _ in range(k - 1):
        lp.append(_poly_mul_codes(f, lp[-1], left))
        rp.append(_poly_mul_codes(f, rp[-1], right))
    out = np.zeros((k, k), dtype=np.int64)
    for i in range(1, k + 1):
        row = _poly_mul_codes(f, lp[k - i], rp[i - 1])
        out[i - 1, :len(row)] = row
    if linalg.rank(f, out) != k:
        raise InternalVerificationFailed("induced matrix is singular")
    return out


def delta_multiplier(g: MobiusTransform, k: int, t) -> FieldElement:
    a, b, c, d = g.entries
    e = k - 1
    if is_infinity(t):
        return b**e if b.value else d**e
    den = a + b * t
    if b.value and den.value == 0:
        return (c - d * a / b) ** e
    return den**e


def delta_diagonal(g: MobiusTransform, k: int, points) -> list[FieldElement]:
    """Multipliers δ_i with g_k c_k(α_i) = δ_i c_k(g(α_i))."""
    return [delta_multiplier(g, k, t) for t in points]


@dataclass(frozen=True, eq=False)
class TransportCertificate:
    original: GrsCode
    transform: MobiusTransform
    transported: GrsCode
    multipliers: tuple[FieldElement, ...]

    def to_json(self, include_matrix: bool = True) -> dict:
        from .descriptor import code_to_json

        return {
            "transform": self.transform.to_json(),
            "multipliers": [m.coeffs for m in self.multipliers],
            "original": code_to_json(self.original, include_matrix),
            "transported": code_to_json(self.transported, include_matrix),
        }


def transport(code: GrsCode, g: MobiusTransform, require_self_dual: bool = True) -> TransportCertificate:
    """Rewrite GRS_k(A, v) as GRS_k(gA, δ·v) and certify that the code is unchanged."""
    f = code.field
    f.check(g.a)
    if require_self_dual and not is_self_dual(code):
        raise NotSelfDual("input code is not self-dual")
    new_points = EvaluationSet(f, tuple(apply(g, t) for t in code.points))
    mult = delta_diagonal(g, code.k, code.points)
    v = ScalingVector(f, tuple(m * v for m, v in zip(mult, code.scaling)))
    prov = {"source": "mobius", "transform": g.to_json(), "parent": code.provenance}
    new = make_code(f, code.k, new_points, v, prov)
    if not linalg.row_spaces_equal(f, code.generator, new.generator):
        raise InternalVerificationFailed("transported code has a different row space")
    if require_self_dual and not is_self_dual(new):
        raise InternalVerificationFailed("transported code is not self-dual")
    return TransportCertificate(code, g, new, tuple(mult))


def remove_infinity(code: GrsCode) -> TransportCertificate:
    """Move a self-dual extended code to an all-finite evaluation set via t -> 1/(t + a).

    a is the first field element, in code order, with -a outside the evaluation set.
    """
    f = code.field
    if not code.points.has_infinity:
        raise NoInfinity("evaluation set does not contain ∞")
    if code.n >= f.q + 1:
        raise FullProjectiveLine("evaluation set is the whole projective line")
    used = {p.value for p in code.points if not is_infinity(p)}
    a = next(x for x in f.elements() if (-x).value not in used)
    g = MobiusTransform(f, a, f.one, f.one, f.zero)
    cert = transport(code, g)
    if cert.transported.points.has_infinity:
        raise InternalVerificationFailed("∞ survived the transport")
    return cert


def projective_line(field: FieldContext) -> list:
    """F_q in code order followed by ∞."""
    return list(field.elements()) + [INF]


def permutation_matrix(g: MobiusTransform) -> np.ndarray:
    """Π(g): (α_1, ..., α_{q+1}) Π(g) = (g α_1, ..., g α_{q+1})."""
    f = g.field
    line = projective_line(f)
    pos = {INF_CODE if is_infinity(x) else x.value: j for j, x in enumerate(line)}
    pi = np.zeros((f.q + 1, f.q + 1), dtype=np.int64)
    for i, x in enumerate(line):
        y = apply(g, x)
        pi[pos[INF_CODE if is_infinity(y) else y.value], i] = 1
    return pi


def automorphism_identity_check(g: MobiusTransform, k: int, deltas=None,
                                max_q: int = AUTOMORPHISM_CHECK_MAX_Q) -> bool:
    """Check g_k G_k = G_k Π(g) Δ_k(g) over the whole projective line.

    ``deltas`` replaces the diagonal of Δ_k(g) (used for falsification controls).
    """
    f = g.field
    if f.q > max_q:
        raise FieldTooLarge(f"q = {f.q} exceeds {max_q} for the full-line check")
    line = projective_line(f)
    gk_full = columns(f, k, np.array([INF_CODE if is_infinity(x) else x.value for x in line]))
    lhs = linalg.matmul(f, induced_matrix(g, k), gk_full)
    if deltas is None:
        deltas = delta_diagonal(g, k, line)
    dcodes = np.array([f(x).value for x in deltas], dtype=np.int64)
    rhs = f.vmul(linalg.matmul(f, gk_full, permutation_matrix(g)), dcodes[None, :])
    return bool(np.array_equal(lhs, rhs))
