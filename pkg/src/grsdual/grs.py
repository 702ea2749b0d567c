"""Generalized Reed-Solomon codes and their exact verification.

A code GRS_k(A, v) over GF(q) has generator columns v_j * c_k(a_j), where
c_k(a) = (1, a, ..., a^{k-1})^T for finite a and c_k(∞) = (0, ..., 0, 1)^T.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Sequence

import numpy as np

from . import linalg
from .errors import (
    BadDimension,
    DuplicatePoints,
    InconsistentWord,
    InfinityInSet,
    InfinityUnsupported,
    InternalVerificationFailed,
    LengthMismatch,
    NotAMember,
    TooLarge,
    TooManyErasures,
    ZeroScaling,
)
from .field import INF, EvaluationPoint, FieldContext, FieldElement, is_infinity

BRUTEFORCE_BOUND = 2**22
EXHAUSTIVE_MINORS_LIMIT = 10**5
DEFAULT_SAMPLES = 10**4

INF_CODE = -1


def _coerce_point(field: FieldContext, pt) -> EvaluationPoint:
    if is_infinity(pt):
        return INF
    if isinstance(pt, FieldElement):
        field.check(pt)
        return pt
    return field(int(pt))


@dataclass(frozen=True)
class EvaluationSet:
    """Ordered, duplicate-free points of F_q ∪ {∞}."""

    field: FieldContext
    points: tuple

    def __post_init__(self):
        pts = tuple(_coerce_point(self.field, p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise BadDimension("evaluation set must be nonempty")
        if len(pts) > self.field.q + 1:
            raise BadDimension(f"at most q+1 = {self.field.q + 1} points")
        codes = [INF_CODE if is_infinity(p) else p.value for p in pts]
        if len(set(codes)) != len(codes):
            seen: set[int] = set()
            dup = next(c for c in codes if c in seen or seen.add(c))
            raise DuplicatePoints(f"repeated evaluation point {self._show(dup)}")

    @classmethod
    def of(cls, field: FieldContext, points: Iterable) -> "EvaluationSet":
        if isinstance(points, EvaluationSet):
            return points
        return cls(field, tuple(points))

    def _show(self, code: int) -> str:
        return "∞" if code == INF_CODE else repr(self.field.from_code(code))

    @property
    def codes(self) -> np.ndarray:
        return np.array([INF_CODE if is_infinity(p) else p.value for p in self.points], dtype=np.int64)

    @property
    def has_infinity(self) -> bool:
        return any(is_infinity(p) for p in self.points)

    def finite(self) -> "EvaluationSet":
        return EvaluationSet(self.field, tuple(p for p in self.points if not is_infinity(p)))

    def index(self, point) -> int:
        point = _coerce_point(self.field, point)
        for i, p in enumerate(self.points):
            if p is point or (not is_infinity(p) and not is_infinity(point) and p.value == point.value):
                return i
        raise NotAMember(f"{point!r} is not in the evaluation set")

    def __contains__(self, point) -> bool:
        try:
            self.index(point)
        except NotAMember:
            return False
        return True

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def union(self, extra: Iterable) -> "EvaluationSet":
        return EvaluationSet(self.field, self.points + tuple(extra))


@dataclass(frozen=True)
class ScalingVector:
    field: FieldContext
    values: tuple

    def __post_init__(self):
        vals = tuple(self.field(v) if not isinstance(v, FieldElement) else v for v in self.values)
        for v in vals:
            self.field.check(v)
        object.__setattr__(self, "values", vals)
        for i, v in enumerate(vals):
            if v.value == 0:
                raise ZeroScaling(f"scaling entry {i} is zero")

    @classmethod
    def of(cls, field: FieldContext, values: Iterable) -> "ScalingVector":
        if isinstance(values, ScalingVector):
            return values
        return cls(field, tuple(values))

    @classmethod
    def from_codes(cls, field: FieldContext, codes: Iterable[int]) -> "ScalingVector":
        return cls(field, tuple(field.from_code(int(c)) for c in codes))

    @property
    def codes(self) -> np.ndarray:
        return np.array([v.value for v in self.values], dtype=np.int64)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True, eq=False)
class GrsCode:
    field: FieldContext
    k: int
    points: EvaluationSet
    scaling: ScalingVector
    generator: np.ndarray
    provenance: dict = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"GrsCode([{self.n}, {self.k}] over {self.field!r}, provenance={self.provenance})"


# ---------------------------------------------------------------------------
# columns and generator matrices
# ---------------------------------------------------------------------------

def eval_column(k: int, alpha, field: FieldContext | None = None) -> list[FieldElement]:
    """c_k(alpha) as a list of k field elements."""
    if k < 1:
        raise BadDimension("k must be >= 1")
    if is_infinity(alpha):
        if field is None:
            raise ValueError("field required to build c_k(∞)")
        return [field.zero] * (k - 1) + [field.one]
    return [alpha**i for i in range(k)]


def columns(field: FieldContext, k: int, point_codes: np.ndarray) -> np.ndarray:
    """Matrix [c_k(a_1), ..., c_k(a_n)] from point codes (-1 marks ∞)."""
    pc = np.asarray(point_codes, dtype=np.int64)
    fin = pc != INF_CODE
    base = np.where(fin, pc, 0)
    out = np.zeros((k, pc.size), dtype=np.int64)
    for i in range(k):
        out[i] = np.where(fin, field.vpow(base, i), 0)
    out[k - 1, ~fin] = 1
    return out


def generator_matrix(field: FieldContext, k: int, points: EvaluationSet, scaling: ScalingVector) -> np.ndarray:
    return field.vmul(columns(field, k, points.codes), scaling.codes[None, :])


def make_code(field: FieldContext, k: int, points, scaling=None, provenance: dict | None = None) -> GrsCode:
    """Assemble GRS_k(points, scaling) and certify that its generator has rank k.

    ``scaling`` defaults to the all-ones vector.  k = 1 is accepted for
    degenerate examples; constructions always use k >= 2.
    """
    pts = EvaluationSet.of(field, points)
    if scaling is None:
        scaling = [field.one] * len(pts)
    sv = ScalingVector.of(field, scaling)
    if len(sv) != len(pts):
        raise LengthMismatch(f"{len(pts)} points but {len(sv)} scaling entries")
    n = len(pts)
    if not 1 <= k <= n:
        raise BadDimension(f"need 1 <= k <= n, got k={k}, n={n}")
    if k > field.q:
        raise BadDimension(f"k={k} exceeds q={field.q}")
    gen = generator_matrix(field, k, pts, sv)
    if linalg.rank(field, gen) != k:
        raise InternalVerificationFailed("generator matrix is rank deficient")
    return GrsCode(field, k, pts, sv, gen, dict(provenance or {"source": "manual"}))


def generator_matches(code: GrsCode) -> bool:
    """True if the stored generator equals the one rebuilt from points and scaling."""
    expected = generator_matrix(code.field, code.k, code.points, code.scaling)
    return expected.shape == code.generator.shape and bool(np.array_equal(expected, code.generator))


# ---------------------------------------------------------------------------
# pi_A, delta_A and friends
# ---------------------------------------------------------------------------

def _finite_set(field: FieldContext | None, points) -> EvaluationSet:
    if isinstance(points, EvaluationSet):
        pts = points
    else:
        points = list(points)
        if field is None:
            field = next(p.ctx for p in points if isinstance(p, FieldElement))
        pts = EvaluationSet(field, tuple(points))
    if pts.has_infinity:
        raise InfinityInSet("π_A and δ_A need a finite evaluation set")
    return pts


def pi_eval(points, x: FieldElement) -> FieldElement:
    """π_A(x) = ∏_{a ∈ A} (x - a)."""
    pts = _finite_set(x.ctx, points)
    out = x.ctx.one
    for a in pts:
        out = out * (x - a)
    return out


def delta(points, a) -> FieldElement:
    """δ_A(a) = ∏_{a' ∈ A, a' ≠ a} (a - a')."""
    pts = _finite_set(a.ctx if isinstance(a, FieldElement) else None, points)
    i = pts.index(a)
    a = pts[i]
    out = pts.field.one
    for j, b in enumerate(pts):
        if j != i:
            out = out * (a - b)
    return out


def all_deltas(points: EvaluationSet) -> np.ndarray:
    """Codes of δ_A(a) for every a in a finite set, computed through logs."""
    pts = _finite_set(None, points)
    f = pts.field
    c = pts.codes
    diff = f.vsub(c[:, None], c[None, :])
    lg = f.log[diff]
    np.fill_diagonal(lg, 0)
    return f.exp[lg.sum(axis=1) % (f.q - 1)]


def poly_from_roots(field: FieldContext, roots: Iterable[FieldElement]) -> list[FieldElement]:
    """Coefficients (constant first) of ∏ (x - r)."""
    coeffs = [field.one]
    for r in roots:
        nxt = [field.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - c * r
        coeffs = nxt
    return coeffs


def poly_derivative(coeffs: Sequence[FieldElement]) -> list[FieldElement]:
    return [c * i for i, c in enumerate(coeffs)][1:]


def poly_eval(coeffs: Sequence[FieldElement], x: FieldElement) -> FieldElement:
    out = x.ctx.zero
    for c in reversed(coeffs):
        out = out * x + c
    return out


def delta_by_derivative(points, a: FieldElement) -> FieldElement:
    """δ_A(a) computed as the formal derivative π'_A evaluated at a."""
    pts = _finite_set(a.ctx, points)
    pts.index(a)
    return poly_eval(poly_derivative(poly_from_roots(pts.field, pts.points)), a)


def delta_by_partition(parts: Sequence[Sequence[FieldElement]], a: FieldElement) -> FieldElement:
    """δ_A(a) for A the disjoint union of ``parts``: δ_{A_i}(a) ∏_{j≠i} π_{A_j}(a)."""
    home = [i for i, part in enumerate(parts) if any(b == a for b in part)]
    if len(home) != 1:
        raise NotAMember(f"{a!r} must lie in exactly one part")
    i = home[0]
    out = delta(list(parts[i]), a)
    for j, part in enumerate(parts):
        if j != i:
            out = out * pi_eval(list(part), a)
    return out


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------

def dual_scaling(code: GrsCode) -> ScalingVector:
    """Scaling u with GRS_{n-k}(A, u) = GRS_k(A, v)^⊥, namely u_i = (v_i δ_A(a_i))^{-1}."""
    if code.points.has_infinity:
        raise InfinityUnsupported("dual scaling is only provided for finite evaluation sets")
    f = code.field
    u = f.vinv(f.vmul(code.scaling.codes, all_deltas(code.points)))
    dk = code.n - code.k
    if dk >= 1:
        gd = generator_matrix(f, dk, code.points, ScalingVector.from_codes(f, u))
        if np.any(linalg.matmul(f, code.generator, gd.T)):
            raise InternalVerificationFailed("dual scaling does not annihilate the code")
    return ScalingVector.from_codes(f, u)


@dataclass(frozen=True)
class SelfDualVerdict:
    ok: bool
    reason: str = ""
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def gram(code: GrsCode) -> np.ndarray:
    return linalg.matmul(code.field, code.generator, code.generator.T)


def is_self_dual(code: GrsCode) -> SelfDualVerdict:
    """Self-duality certificate: n = 2k, rank k and G G^T = 0."""
    g = code.generator
    n = g.shape[1]
    k = g.shape[0]
    if n != 2 * k:
        return SelfDualVerdict(False, f"length {n} is not twice the dimension {k}")
    if linalg.rank(code.field, g) != k:
        return SelfDualVerdict(False, "generator rank is below k")
    gm = gram(code)
    bad = np.argwhere(gm != 0)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        return SelfDualVerdict(False, f"rows {i} and {j} are not orthogonal", (i, j))
    return SelfDualVerdict(True, "Gram matrix vanishes and rank is n/2")


# ---------------------------------------------------------------------------
# minimum distance and MDS checks
# ---------------------------------------------------------------------------

def min_distance_bruteforce(code: GrsCode, bound: int = BRUTEFORCE_BOUND) -> int:
    """Minimum weight over all q^k - 1 nonzero codewords."""
    f = code.field
    k, n = code.generator.shape
    total = f.q**k
    if total > bound:
        raise TooLarge(f"q^k = {total} codewords exceed the bound {bound}")
    g = code.generator
    best = n
    chunk = max(1, (1 << 21) // max(1, k * n))
    place = f.q ** np.arange(k, dtype=np.int64)
    for start in range(1, total, chunk):
        ids = np.arange(start, min(total, start + chunk), dtype=np.int64)
        msgs = (ids[:, None] // place[None, :]) % f.q
        words = f.vsum(f.vmul(msgs[:, :, None], g[None, :, :]), axis=1)
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def _deficient_subset_exists(f: FieldContext, g: np.ndarray, z: int) -> bool:
    k = g.shape[0]
    for cols in itertools.combinations(range(g.shape[1]), z):
        if linalg.rank(f, g[:, cols]) < k:
            return True
    return False


def min_distance_by_supports(code: GrsCode) -> int:
    """Exact minimum distance from column ranks.

    A nonzero codeword vanishing on a column set Z exists iff rank(G_Z) < k,
    so d = n - max{|Z| : rank(G_Z) < k}.  Every set of k-1 columns is deficient.
    """
    f = code.field
    g = code.generator
    k, n = g.shape
    subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64)
    ok = np.ones(len(subsets), dtype=bool)
    for s in range(0, len(subsets), 4096):
        block = subsets[s:s + 4096]
        ok[s:s + 4096] = linalg.batch_nonsingular(f, np.transpose(g[:, block], (1, 0, 2)))
    if ok.all():
        return n - k + 1
    z = k
    while z + 1 <= n and _deficient_subset_exists(f, g, z + 1):
        z += 1
    return n - z


def min_distance(code: GrsCode, bound: int = BRUTEFORCE_BOUND) -> tuple[int, str]:
    """Exact minimum distance with the method used ("bruteforce" or "supports")."""
    if code.field.q ** code.k <= bound:
        return min_distance_bruteforce(code, bound), "bruteforce"
    return min_distance_by_supports(code), "supports"


def columns_independent(f: FieldContext, g: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """For each k-subset of columns, whether those columns of g are independent.

    Works on the reduced echelon form [I | P] (up to column order): columns S
    are independent iff P restricted to the pivot rows missing from S and the
    non-pivot columns inside S is nonsingular.
    """
    subsets = np.asarray(subsets, dtype=np.int64)
    k, n = g.shape
    r, piv = linalg.rref(f, g)
    if len(piv) < k:
        return np.zeros(len(subsets), dtype=bool)
    pivot_row = np.full(n, -1, dtype=np.int64)
    pivot_row[piv] = np.arange(k)
    out = np.ones(len(subsets), dtype=bool)
    # rows: pivot rows whose pivot column is absent; cols: non-pivot columns present
    member = np.zeros((len(subsets), n), dtype=bool)
    member[np.arange(len(subsets))[:, None], subsets] = True
    missing_rows = ~member[:, piv]
    extra_cols = member & (pivot_row < 0)[None, :]
    sizes = missing_rows.sum(axis=1)
    for s in np.unique(sizes):
        if s == 0:
            continue
        sel = np.nonzero(sizes == s)[0]
        for c0 in range(0, len(sel), 2048):
            part = sel[c0:c0 + 2048]
            rows = np.nonzero(missing_rows[part])[1].reshape(len(part), s)
            cols = np.nonzero(extra_cols[part])[1].reshape(len(part), s)
            minors = r[rows[:, :, None], cols[:, None, :]]
            out[part] = linalg.batch_nonsingular(f, minors)
    return out


@dataclass(frozen=True)
class MdsVerdict:
    ok: bool
    mode: str
    samples: int = 0
    seed: int | None = None
    distance: int | None = None
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "verdict": self.ok,
            "samples": self.samples,
            "seed": self.seed,
            "distance": self.distance,
            "witness": list(self.witness) if self.witness is not None else None,
        }


def mds_check(
    code: GrsCode,
    mode: str = "auto",
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    bruteforce_bound: int = BRUTEFORCE_BOUND,
    exhaustive_limit: int = EXHAUSTIVE_MINORS_LIMIT,
) -> MdsVerdict:
    """Check d = n - k + 1 by brute force, by all k-minors, or by seeded sampled minors."""
    f = code.field
    k, n = code.generator.shape
    if mode == "auto":
        if f.q**k <= bruteforce_bound:
            mode = "bruteforce"
        elif math.comb(n, k) <= exhaustive_limit:
            mode = "exhaustive"
        else:
            mode = "sampled"
    if mode == "bruteforce":
        d = min_distance_bruteforce(code, bruteforce_bound)
        return MdsVerdict(d == n - k + 1, "bruteforce", samples=f.q**k - 1, distance=d)
    if mode == "exhaustive":
        if math.comb(n, k) > exhaustive_limit:
            raise TooLarge(f"C({n},{k}) minors exceed the exhaustive limit {exhaustive_limit}")
        subsets = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64).reshape(-1, k)
        seed_used = None
    elif mode == "sampled":
        rng = np.random.default_rng(seed)
        subsets = np.sort(np.argsort(rng.random((samples, n)), axis=1)[:, :k], axis=1)
        seed_used = seed
    else:
        raise ValueError(f"unknown MDS mode {mode!r}")
    ok = columns_independent(f, code.generator, subsets)
    witness = None
    if not ok.all():
        witness = tuple(int(x) for x in subsets[np.argmin(ok)])
    return MdsVerdict(bool(ok.all()), mode, samples=len(subsets), seed=seed_used, witness=witness)


# ---------------------------------------------------------------------------
# encoding and erasure decoding
# ---------------------------------------------------------------------------

def _codes_of(field: FieldContext, vec: Sequence) -> np.ndarray:
    return np.array([field(x).value for x in vec], dtype=np.int64)


def encode(code: GrsCode, message: Sequence) -> list[FieldElement]:
    f = code.field
    if len(message) != code.k:
        raise LengthMismatch(f"message length {len(message)} != k = {code.k}")
    m = _codes_of(f, message)
    word = f.vsum(f.vmul(m[:, None], code.generator), axis=0)
    return [f.from_code(int(c)) for c in word]


def erasure_decode(code: GrsCode, word: Sequence) -> list[FieldElement]:
    """Recover the message from a codeword with erasures marked as None."""
    f = code.field
    if len(word) != code.n:
        raise LengthMismatch(f"word length {len(word)} != n = {code.n}")
    keep = [i for i, x in enumerate(word) if x is not None]
    k = code.k
    if len(keep) < k:
        raise TooManyErasures(f"{code.n - len(keep)} erasures, at most {code.n - k} recoverable")
    w = _codes_of(f, [word[i] for i in keep])
    system = np.concatenate([code.generator[:, keep].T, w[:, None]], axis=1)
    r, piv = linalg.rref(f, system)
    if k in piv:
        raise InconsistentWord("received word is not consistent with any codeword")
    if piv != list(range(k)):
        raise TooManyErasures("unerased positions do not determine the message")
    return [f.from_code(int(c)) for c in r[:k, k]]
