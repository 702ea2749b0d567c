import itertools

import numpy as np
import pytest

from grsdual.errors import (
    BadDimension,
    CharactersNotEqual,
    EvenLength,
    NegCharacterNotSquare,
    OddLength,
    OddN,
)
from grsdual.field import INF, build_field
from grsdual.grs import delta, is_self_dual, make_code, mds_check
from grsdual.linalg import row_spaces_equal
from grsdual.selfdual import lemma2_code, lemma2_scaling, lemma3_code, lemma3_scaling, pless_exists, profile

F3 = build_field(3, 1)
F9 = build_field(3, 2)
w = F9.omega


def exists_self_dual_scaling(F, points):
    """Brute force over every nonzero scaling vector for GRS_{n/2}(points, v)."""
    n = len(points)
    k = n // 2
    cols = np.array([[(p**i).value for p in points] for i in range(k)])
    for v in itertools.product(range(1, F.q), repeat=n):
        g = F.vmul(cols, np.array(v)[None, :])
        gram = F.vsum(F.vmul(g[:, None, :], g[None, :, :]), axis=2)
        if not gram.any():
            return True
    return False


def test_profile_examples():
    A = [F9.one, -F9.one, w**2, -(w**2)]
    prof = profile(A)
    assert prof.eta == (1, 1, 1, 1) and prof.all_equal
    for a, d in zip(A, prof.deltas):
        assert d == delta(A, a)
    p3 = profile([F3.zero, F3.one])
    assert [d.value for d in p3.deltas] == [2, 1]
    assert p3.eta == (-1, 1) and not p3.all_equal
    with pytest.raises(BadDimension):
        profile([F3.zero])
    with pytest.raises(BadDimension):
        profile([F9.one, INF], field=F9)


def test_profile_matches_scalar_recomputation():
    rng = np.random.default_rng(5)
    for pm in [(3, 2), (5, 2), (7, 1)]:
        F = build_field(*pm)
        for _ in range(20):
            n = int(rng.integers(2, min(8, F.q) + 1))
            A = [F.from_code(int(c)) for c in rng.choice(F.q, size=n, replace=False)]
            prof = profile(A)
            for a, e, en in zip(A, prof.eta, prof.eta_neg):
                assert e == F.quadratic_character(delta(A, a))
                assert en == F.quadratic_character(-delta(A, a))
            assert prof.all_equal == (len(set(prof.eta)) == 1)
            assert prof.all_neg_square == all(x == 1 for x in prof.eta_neg)


def test_lemma2_examples():
    A = [F9.one, -F9.one, w**2, -(w**2)]
    code = lemma2_code(A)
    assert code.k == 2 and code.provenance["source"] == "lemma2"
    assert is_self_dual(code) and mds_check(code)
    v = lemma2_scaling(A)
    for a, vi in zip(A, v):
        assert vi * vi == delta(A, a).inverse()
    with pytest.raises(CharactersNotEqual):
        lemma2_scaling([F3.zero, F3.one])
    with pytest.raises(OddLength):
        lemma2_scaling([F9.zero, F9.one, w])


def test_lemma2_nonsquare_branch_uses_omega():
    # find a set whose common character is -1
    F = build_field(5, 2)
    rng = np.random.default_rng(11)
    for _ in range(500):
        A = [F.from_code(int(c)) for c in rng.choice(F.q, size=4, replace=False)]
        prof = profile(A)
        if prof.all_equal and prof.eta[0] == -1:
            break
    else:
        pytest.skip("no example found")
    code = lemma2_code(A)
    for a, vi in zip(A, code.scaling):
        assert vi * vi == F.omega / delta(A, a)
    assert is_self_dual(code)


def test_lemma2_global_rescaling_keeps_row_space():
    A = [F9.one, -F9.one, w**2, -(w**2)]
    code = lemma2_code(A)
    for c in F9.nonzero():
        other = make_code(F9, 2, A, [c * v for v in code.scaling])
        assert row_spaces_equal(F9, code.generator, other.generator)


def test_lemma3_examples():
    A = [F9.zero, F9.one, -F9.one]
    assert [d.value for d in profile(A).deltas] == [2, 2, 2]
    pts, v = lemma3_scaling(A)
    assert pts.has_infinity and len(pts) == 4
    assert v[-1] == F9.one
    for a, vi in zip(A, v):
        assert vi * vi == (-delta(A, a)).inverse()
    code = lemma3_code(A)
    assert code.provenance["source"] == "lemma3"
    assert is_self_dual(code) and mds_check(code)
    with pytest.raises(EvenLength):
        lemma3_scaling([F9.zero, F9.one])
    # -delta(0) = -w^3 is a non-square
    with pytest.raises(NegCharacterNotSquare):
        lemma3_scaling([F9.zero, w, w**2])


def test_pless_examples():
    assert pless_exists(9, 2)
    assert not pless_exists(3, 2)
    assert pless_exists(3, 4)
    for q in (5, 13, 25, 29):
        assert all(pless_exists(q, n) for n in range(2, 20, 2))
    with pytest.raises(OddN):
        pless_exists(9, 3)


@pytest.mark.parametrize("pm", [(3, 2), (5, 1), (7, 1), (5, 2)])
def test_every_success_is_consistent(pm):
    F = build_field(*pm)
    rng = np.random.default_rng(pm[0] * 10 + pm[1])
    hits = 0
    for _ in range(80):
        n = int(rng.integers(2, min(8, F.q) + 1))
        A = [F.from_code(int(c)) for c in rng.choice(F.q, size=n, replace=False)]
        prof = profile(A)
        build = lemma2_code if n % 2 == 0 else lemma3_code
        ok = prof.all_equal if n % 2 == 0 else prof.all_neg_square
        if not ok:
            continue
        if n % 2 and (n + 1) // 2 > F.q:
            continue
        code = build(A)
        hits += 1
        assert is_self_dual(code) and mds_check(code)
        assert pless_exists(F.q, code.n)
    assert hits > 0


def test_mixed_character_sets_admit_no_scaling():
    F = F9
    mixed = 0
    for codes in itertools.combinations(range(F.q), 4):
        A = [F.from_code(c) for c in codes]
        if profile(A).all_equal:
            continue
        mixed += 1
        with pytest.raises(CharactersNotEqual):
            lemma2_scaling(A)
        if mixed <= 6:
            assert not exists_self_dual_scaling(F, A)
    assert mixed > 0
