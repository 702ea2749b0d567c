import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from grsdual.errors import (
    BadDimension,
    DuplicatePoints,
    InconsistentWord,
    InfinityInSet,
    InfinityUnsupported,
    LengthMismatch,
    NotAMember,
    TooLarge,
    TooManyErasures,
    ZeroScaling,
)
from grsdual.field import INF, build_field
from grsdual.grs import (
    EvaluationSet,
    GrsCode,
    columns_independent,
    delta,
    delta_by_derivative,
    delta_by_partition,
    dual_scaling,
    encode,
    erasure_decode,
    eval_column,
    is_self_dual,
    make_code,
    mds_check,
    min_distance,
    min_distance_bruteforce,
    min_distance_by_supports,
    pi_eval,
)
from grsdual.linalg import rank

F3 = build_field(3, 1)
F7 = build_field(7, 1)
F9 = build_field(3, 2)
w = F9.omega


def _weights_oracle(code):
    """Minimum weight by enumerating messages with scalar arithmetic."""
    f = code.field
    best = code.n
    for msg in itertools.product(list(f.elements()), repeat=code.k):
        if all(m.value == 0 for m in msg):
            continue
        word = []
        for j in range(code.n):
            acc = f.zero
            for i in range(code.k):
                acc = acc + msg[i] * f.from_code(int(code.generator[i, j]))
            word.append(acc)
        best = min(best, sum(x.value != 0 for x in word))
    return best


def _code_94():
    return make_code(F9, 2, [F9.zero, F9.one, w, w**2])


# -- columns and assembly ------------------------------------------------------

def test_eval_column_examples():
    assert [x.value for x in eval_column(3, F9.zero)] == [1, 0, 0]
    assert [x.value for x in eval_column(3, INF, F9)] == [0, 0, 1]
    assert eval_column(2, w) == [F9.one, w]
    with pytest.raises(BadDimension):
        eval_column(0, w)


def test_make_code_example():
    c = _code_94()
    assert c.generator.tolist() == [[1, 1, 1, 1], [0, 1, w.value, (w**2).value]]
    assert c.provenance == {"source": "manual"}
    ext = make_code(F9, 2, [F9.one, INF], [w, w**3])
    assert ext.generator.tolist() == [[w.value, 0], [w.value, (w**3).value]]


def test_make_code_errors():
    with pytest.raises(DuplicatePoints):
        make_code(F9, 2, [F9.zero, F9.zero, F9.one, w])
    with pytest.raises(ZeroScaling):
        make_code(F9, 2, [F9.zero, F9.one], [F9.one, F9.zero])
    with pytest.raises(BadDimension):
        make_code(F9, 3, [F9.zero, F9.one])
    with pytest.raises(LengthMismatch):
        make_code(F9, 1, [F9.zero, F9.one], [F9.one])
    with pytest.raises(DuplicatePoints):
        make_code(F9, 2, [INF, F9.one, INF])


# -- pi and delta -------------------------------------------------------------------

def test_pi_examples():
    F11 = build_field(11, 1)
    assert pi_eval([F11.zero], F11(5)).value == 5
    assert pi_eval([F7(1), F7(2)], F7(3)).value == 2
    with pytest.raises(InfinityInSet):
        pi_eval(EvaluationSet(F9, (INF, F9.one)), w)


def test_pi_of_coset_is_binomial():
    F = build_field(5, 2)
    for n_prime in (2, 3, 4, 6, 8, 12):
        H = F.subgroup(n_prime)
        beta = F.power_of_omega(5)
        coset = [beta * h for h in H]
        for x in F.elements():
            assert pi_eval(coset, x) == x**n_prime - beta**n_prime


def test_delta_examples():
    assert delta([F3.zero, F3.one], F3.zero).value == 2
    assert delta([F3.zero, F3.one], F3.one).value == 1
    roots = F9.subgroup(4)
    for a in roots:
        assert delta(roots, a) == a**3
    with pytest.raises(NotAMember):
        delta([F3.zero, F3.one], F3(2))


def _random_set(F, rng, lo=2, hi=8):
    n = int(rng.integers(lo, min(hi, F.q) + 1))
    return [F.from_code(int(c)) for c in rng.choice(F.q, size=n, replace=False)]


@pytest.mark.parametrize("q", [9, 25, 49, 27])
def test_lagrange_identity_random_sets(q):
    F = {9: F9, 25: build_field(5, 2), 49: build_field(7, 2), 27: build_field(3, 3)}[q]
    rng = np.random.default_rng(q)
    for _ in range(25):
        A = _random_set(F, rng)
        n = len(A)
        for j in range(n):
            s = F.zero
            for a in A:
                s = s + a**j / delta(A, a)
            assert s == (F.one if j == n - 1 else F.zero)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (7, 1)]), st.data())
def test_delta_identities(pm, data):
    F = build_field(*pm)
    codes = data.draw(st.lists(st.integers(0, F.q - 1), min_size=2, max_size=8, unique=True))
    A = [F.from_code(c) for c in codes]
    labels = data.draw(st.lists(st.integers(0, 3), min_size=len(A), max_size=len(A)))
    parts = [[a for a, l in zip(A, labels) if l == i] for i in range(4)]
    parts = [p for p in parts if p]
    for a in A:
        d = delta(A, a)
        assert d.value != 0
        assert delta_by_derivative(A, a) == d
        assert delta_by_partition(parts, a) == d


# -- duals and self-duality -------------------------------------------------------

def test_dual_scaling_examples():
    c = make_code(F3, 1, [F3.zero, F3.one])
    assert [u.value for u in dual_scaling(c)] == [2, 1]
    c = make_code(F7, 1, [F7(1), F7(2)])
    assert [u.value for u in dual_scaling(c)] == [6, 1]
    with pytest.raises(InfinityUnsupported):
        dual_scaling(make_code(F9, 1, [F9.one, INF]))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (7, 1)]), st.data())
def test_dual_scaling_annihilates(pm, data):
    F = build_field(*pm)
    codes = data.draw(st.lists(st.integers(0, F.q - 1), min_size=2, max_size=9, unique=True))
    n = len(codes)
    k = data.draw(st.integers(1, n - 1))
    v = data.draw(st.lists(st.integers(1, F.q - 1), min_size=n, max_size=n))
    pts = [F.from_code(c) for c in codes]
    code = make_code(F, k, pts, [F.from_code(c) for c in v])
    u = dual_scaling(code)
    dual = make_code(F, n - k, pts, u)
    prod = F.vsum(F.vmul(code.generator[:, None, :], dual.generator[None, :, :]), axis=2)
    assert not prod.any()


def test_is_self_dual_examples():
    # generic scaling fails with a witness
    verdict = is_self_dual(_code_94())
    assert not verdict and verdict.witness is not None
    # odd length
    odd = make_code(F9, 1, [F9.zero, F9.one, w])
    assert "length" in is_self_dual(odd).reason
    # the Theorem-1 toy set {1, -1, w^2, -w^2} with the right scaling
    from grsdual.selfdual import lemma2_code

    c = lemma2_code([F9.one, -F9.one, w**2, -(w**2)])
    assert is_self_dual(c)


def test_self_dual_detects_bad_rank():
    c = _code_94()
    bad = GrsCode(F9, 2, c.points, c.scaling, np.zeros((2, 4), dtype=np.int64), {})
    assert is_self_dual(bad).reason == "generator rank is below k"


# -- minimum distance ---------------------------------------------------------------

def test_min_distance_examples():
    assert min_distance_bruteforce(_code_94()) == 3
    # [2,1] over GF(3) on {0,1}: a single row (1, 1) has weight 2
    c = make_code(F3, 1, [F3.zero, F3.one])
    assert min_distance_bruteforce(c) == 2 == _weights_oracle(c)
    rep = make_code(F7, 1, [F7(1), F7(2), F7(3)])
    assert min_distance_bruteforce(rep) == 3
    with pytest.raises(TooLarge):
        min_distance_bruteforce(_code_94(), bound=10)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([(3, 1), (5, 1), (3, 2)]), st.data())
def test_min_distance_matches_enumeration_oracle(pm, data):
    F = build_field(*pm)
    pts = data.draw(st.lists(st.integers(-1, F.q - 1), min_size=2, max_size=min(6, F.q + 1), unique=True))
    pts = [INF if c < 0 else F.from_code(c) for c in pts]
    n = len(pts)
    k = data.draw(st.integers(1, min(n, 3)))
    v = data.draw(st.lists(st.integers(1, F.q - 1), min_size=n, max_size=n))
    code = make_code(F, k, pts, [F.from_code(c) for c in v])
    d = _weights_oracle(code)
    assert d == n - k + 1
    assert min_distance_bruteforce(code) == d
    assert min_distance_by_supports(code) == d


def test_all_small_grs_codes_are_mds():
    rng = np.random.default_rng(7)
    for pm in [(3, 2), (5, 2), (7, 2)]:
        F = build_field(*pm)
        for _ in range(6):
            n = int(rng.integers(2, min(10, F.q) + 1))
            k = int(rng.integers(1, n + 1))
            if F.q**k > 2**18:
                k = 3
            pts = [F.from_code(int(c)) for c in rng.choice(F.q, size=n, replace=False)]
            v = [F.from_code(int(c)) for c in rng.integers(1, F.q, size=n)]
            code = make_code(F, k, pts, v)
            assert min_distance(code)[0] == n - k + 1


def test_supports_method_on_non_mds_generator():
    c = _code_94()
    g = c.generator.copy()
    g[:, 3] = g[:, 2]
    bad = GrsCode(F9, 2, c.points, c.scaling, g, {})
    assert min_distance_bruteforce(bad) == min_distance_by_supports(bad) == _weights_oracle(bad) == 2


# -- MDS checks ------------------------------------------------------------------

def test_mds_check_modes():
    c = _code_94()
    assert mds_check(c).mode == "bruteforce"
    v = mds_check(c, mode="exhaustive")
    assert v and v.samples == 6 and v.mode == "exhaustive"
    s = mds_check(c, mode="sampled", samples=50, seed=4)
    assert s and s.seed == 4 and s.samples == 50
    with pytest.raises(ValueError):
        mds_check(c, mode="nope")


def test_mds_check_detects_duplicated_column():
    c = _code_94()
    g = c.generator.copy()
    g[:, 1] = g[:, 0]
    bad = GrsCode(F9, 2, c.points, c.scaling, g, {})
    for mode in ("bruteforce", "exhaustive"):
        assert not mds_check(bad, mode=mode)
    v = mds_check(bad, mode="exhaustive")
    assert v.witness == (0, 1)


@pytest.mark.parametrize("pm,n,k", [((3, 2), 8, 4), ((5, 2), 10, 4), ((7, 1), 7, 3)])
def test_columns_independent_matches_direct_minors(pm, n, k):
    F = build_field(*pm)
    rng = np.random.default_rng(n * k)
    g = rng.integers(0, F.q, size=(k, n))
    g[:, 1] = g[:, 0]
    g[:, 4] = F.vadd(g[:, 2], g[:, 3])
    subsets = np.array(list(itertools.combinations(range(n), k)))
    got = columns_independent(F, g, subsets)
    want = [rank(F, g[:, s]) == k for s in subsets]
    assert list(got) == want


# -- encode / decode -----------------------------------------------------------------

def test_encode_examples():
    c = _code_94()
    assert all(x.value == 0 for x in encode(c, [F9.zero, F9.zero]))
    assert [x.value for x in encode(c, [F9.one, F9.zero])] == c.generator[0].tolist()
    word = encode(c, [F9.one, F9.one])
    assert word == [F9.one + a for a in c.points]
    with pytest.raises(LengthMismatch):
        encode(c, [F9.one])


def test_erasure_decode_all_patterns():
    c = _code_94()
    msg = [F9.one, w]
    word = encode(c, msg)
    assert erasure_decode(c, word) == msg
    for erased in itertools.combinations(range(4), 2):
        punct = [None if i in erased else x for i, x in enumerate(word)]
        assert erasure_decode(c, punct) == msg
    with pytest.raises(TooManyErasures):
        erasure_decode(c, [None, None, None, word[3]])
    bad = list(word)
    bad[0] = bad[0] + F9.one
    with pytest.raises(InconsistentWord):
        erasure_decode(c, bad)
    with pytest.raises(LengthMismatch):
        erasure_decode(c, word[:3])


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 2), (5, 1), (7, 1)]), st.data())
def test_encode_decode_round_trip(pm, data):
    F = build_field(*pm)
    pts = data.draw(st.lists(st.integers(-1, F.q - 1), min_size=2, max_size=min(7, F.q + 1), unique=True))
    pts = [INF if c < 0 else F.from_code(c) for c in pts]
    n = len(pts)
    k = data.draw(st.integers(1, n))
    code = make_code(F, k, pts)
    msg = [F.from_code(c) for c in data.draw(st.lists(st.integers(0, F.q - 1), min_size=k, max_size=k))]
    word = encode(code, msg)
    erased = data.draw(st.sets(st.integers(0, n - 1), max_size=n - k))
    punct = [None if i in erased else x for i, x in enumerate(word)]
    assert erasure_decode(code, punct) == msg
