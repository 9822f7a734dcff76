import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affblocks.affine_weyl import (
    INDETERMINATE,
    affine_weyl_group,
    check,
    enumerate_region,
    facet_from_J,
    facet_of,
    fundamental_facets,
    hat,
    interior_point,
    is_special,
    orbit_representative,
    periodic_leq,
    special_point_of_box,
    stabilizer,
    translate_alcove,
    w_v,
)
from affblocks.affine_weyl.geometry import in_fundamental_closure
from affblocks.root_data import build_root_system, highest_short_coroots

from conftest import a1_alcove
from oracles import apply_word, factor_cartans, separating_hyperplanes


def random_element(W, rng, length):
    return W.from_word([rng.randrange(W.ngens) for _ in range(length)])


def test_box_and_dot_actions_a1():
    W = affine_weyl_group("A1")
    s1 = W.from_word([0])
    assert W.act(W.translation((2,)), (0,), 3) == (6,)
    assert W.act_dot(s1, (0,), 3) == (-2,)
    rng = random.Random(1)
    for _ in range(20):
        w = random_element(W, rng, rng.randrange(8))
        lam = (rng.randrange(-10, 10),)
        assert W.act_dot(w, (lam[0] - 1,), 3) == (W.act(w, lam, 3)[0] - 1,)


def test_alcove_element_examples_a1():
    W = affine_weyl_group("A1")
    assert W.alcove_of(W.identity) == a1_alcove(0)
    s0s1 = W.from_word([1, 0])  # affine reflection after the finite one
    assert s0s1 == W.translation((2,))
    assert W.alcove_of(s0s1) == a1_alcove(2)
    assert W.element_of(a1_alcove(-1)) == W.from_word([0])


def test_lengths_a1():
    W = affine_weyl_group("A1")
    assert W.d(a1_alcove(0)) == 0
    assert W.d(a1_alcove(3)) == 3
    assert W.reduced_word(W.identity) == ()
    word = W.reduced_word(W.translation((2,)))
    assert W.from_word(word) == W.translation((2,))
    assert sorted(word) == [0, 1]


@pytest.mark.parametrize("name", ["C2", "G2", "A2"])
def test_length_matches_hyperplane_count(name):
    rs = build_root_system(name)
    W = affine_weyl_group(rs)
    (A,) = factor_cartans(name)
    (theta, theta_check), = highest_short_coroots(rs)
    h = rs.coxeter_numbers[0]
    interior = tuple(Fraction(1, h) for _ in range(rs.rank))
    rng = random.Random(7)
    for _ in range(50):
        word = [rng.randrange(W.ngens) for _ in range(rng.randrange(12))]
        w = W.from_word(word)
        image = apply_word(A, theta, theta_check, word, interior)
        expected = separating_hyperplanes(rs.positive_roots, image)
        assert W.d(W.alcove_of(w)) == expected == len(W.reduced_word(w)) == W.length(w)


@pytest.mark.parametrize("name", ["A1", "A2", "C2", "G2", "A1xA1"])
def test_reduced_word_round_trip(name):
    W = affine_weyl_group(name)
    rng = random.Random(3)
    for _ in range(200):
        w = random_element(W, rng, rng.randrange(15))
        word = W.reduced_word(w)
        assert W.from_word(word) == w
        assert len(word) == W.length(w)
        assert W.element_of(W.alcove_of(w)) == w


def _subwords(W, word):
    out = {W.identity}
    for i in word:
        out |= {W.rmul(x, i) for x in out}
    return out


def test_bruhat_examples_and_subword_oracle():
    W = affine_weyl_group("A1")
    s1, s0 = W.from_word([0]), W.from_word([1])
    assert W.bruhat_leq(s1, W.from_word([1, 0]))
    assert not W.bruhat_leq(s0, s1) and not W.bruhat_leq(s1, s0)
    W = affine_weyl_group("A2")
    ball = [W.element_of(A) for A in enumerate_region(W, 4, "alcoves")]
    for y in ball:
        below = _subwords(W, W.reduced_word(y))
        assert W.bruhat_leq(W.identity, y)
        for x in ball:
            assert W.bruhat_leq(x, y) == (x in below)


def test_periodic_order_examples():
    W = affine_weyl_group("A1")
    a = a1_alcove(0)
    assert periodic_leq(W, a, a, 3) is True
    assert periodic_leq(W, a1_alcove(0), a1_alcove(1), 3) is True
    assert periodic_leq(W, a1_alcove(1), a1_alcove(0), 3) is False


def test_periodic_order_is_bruhat_on_dominant_a2():
    W = affine_weyl_group("A2")
    dom = enumerate_region(W, 6, "dominant_alcoves")
    for A in dom:
        for B in dom:
            got = periodic_leq(W, A, B, 6)
            assert got is not INDETERMINATE
            assert got == W.bruhat_leq(W.element_of(A), W.element_of(B))


def test_coset_representatives():
    W = affine_weyl_group("A1")
    assert W.in_fW(W.identity)
    assert W.max_in_coset(W.identity, (0,)) == W.from_word([0])
    W = affine_weyl_group("C2")
    rng = random.Random(5)
    for J in [(0,), (1,), (2,)]:
        group = W.parabolic_elements(J)
        members = enumerate_region(W, 8, "g_facets", J)
        for w in rng.sample(members, min(30, len(members))):
            w_min = W.min_in_coset(w, J)
            # all of w W_J dominant iff its maximal element is dominant
            assert all(W.in_fW(W.mul(w_min, r)) for r in group) == W.is_in_fWg(w, J)
            assert W.is_in_fWg(w, J) == W.is_in_fWg_by_coset(w, J)


def test_stabilizers_and_special_points():
    W = affine_weyl_group("A1")
    (J0, a1), = [f for f in fundamental_facets(W) if not f[0]]
    st0 = stabilizer(W, a1)
    assert st0.elements == (W.identity,) and st0.longest == W.identity
    zero = facet_of(W, (0,))
    st1 = stabilizer(W, zero)
    assert set(st1.elements) == {W.identity, W.from_word([0])}
    assert st1.longest == W.from_word([0])
    assert is_special(W, zero)
    W = affine_weyl_group("C2")
    vertex = facet_from_J(W, (1, 2))
    assert vertex.sample == (Fraction(1, 2), Fraction(0))
    assert not is_special(W, vertex)
    assert is_special(W, facet_from_J(W, (0, 1)))


@pytest.mark.parametrize("name,n", [("A1", 3), ("C2", 2), ("G2", 5), ("A2", 4)])
def test_orbit_representative(name, n):
    W = affine_weyl_group(name)
    rng = random.Random(11)
    for _ in range(40):
        point = tuple(rng.randrange(-15, 15) for _ in range(W.rank))
        rep, x = orbit_representative(W, point, n)
        assert W.act(x, rep, n) == point
        assert in_fundamental_closure(W, facet_of(W, tuple(Fraction(c, n) for c in rep)))
        # the representative does not depend on where in the orbit we start
        y = random_element(W, rng, 6)
        assert orbit_representative(W, W.act(y, point, n), n)[0] == rep


def test_hat_examples():
    W = affine_weyl_group("A1")
    assert hat(W, a1_alcove(0)) == a1_alcove(1)
    for k in range(6):
        assert hat(W, a1_alcove(k)) == a1_alcove(k + 1)
    W = affine_weyl_group("C2")
    rng = random.Random(2)
    for _ in range(100):
        A = W.alcove_of(random_element(W, rng, rng.randrange(14)))
        assert check(W, hat(W, A)) == A
        assert hat(W, check(W, A)) == A


def test_boxes():
    W = affine_weyl_group("A1")
    assert special_point_of_box(W, a1_alcove(0)) == (0,)
    assert special_point_of_box(W, a1_alcove(3)) == (3,)
    W = affine_weyl_group("A2")
    rng = random.Random(4)
    for _ in range(40):
        A = W.alcove_of(random_element(W, rng, rng.randrange(12)))
        v = special_point_of_box(W, A)
        g = w_v(W, v)
        assert W.act(g, v) == v
        assert W.mul(g, g) == W.identity
        B = W.left_act_alcove(g, A)
        p = interior_point(W, B)
        # w_v sends the box at v onto the opposite box v - box
        assert all(0 < v[i] - p[i] < 1 for i in range(W.rank))
        assert check(W, translate_alcove(W, A, [0] * W.rank)) == B


def test_enumerate_region():
    W = affine_weyl_group("A1")
    assert enumerate_region(W, 2, "alcoves") == [a1_alcove(k) for k in (-2, -1, 0, 1, 2)]
    assert enumerate_region(W, 0, "dominant_alcoves") == [a1_alcove(0)]
    W = affine_weyl_group("A2")
    got = enumerate_region(W, 3, "dominant_alcoves")
    # brute scan of bound vectors: dominant alcoves have all n >= 1 and n_{a+b} in {n_a + n_b - 1, n_a + n_b}
    scan = []
    for na in range(1, 5):
        for nb in range(1, 5):
            for nab in (na + nb - 1, na + nb):
                A = (na, nb, nab)
                if W.d(A) <= 3:
                    scan.append(A)
    assert sorted(got) == sorted(scan)


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
def test_translation_conjugation(name):
    W = affine_weyl_group(name)
    rng = random.Random(8)
    for _ in range(30):
        u = tuple(rng.randrange(-4, 5) for _ in range(W.rank))
        v = tuple(rng.randrange(-4, 5) for _ in range(W.rank))
        prod = W.mul(w_v(W, u), w_v(W, v))
        assert prod.linear == W.identity.linear


@pytest.mark.parametrize("name", ["A2", "C2"])
def test_length_additivity_on_g_cosets(name):
    W = affine_weyl_group(name)
    w0 = W.w0()
    for J, _ in fundamental_facets(W):
        if not J:
            continue
        group = W.parabolic_elements(J)
        wg = W.longest_element(J)
        for w in enumerate_region(W, 6, "g_facets", J):
            base = W.mul(W.mul(w0, w), wg)
            for h in group:
                assert W.length(W.mul(base, h)) == W.length(base) + W.length(h)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=14), st.lists(st.integers(0, 2), max_size=14))
def test_group_law_and_inverse(w1, w2):
    W = affine_weyl_group("C2")
    a, b = W.from_word(w1), W.from_word(w2)
    assert W.from_word(w1 + w2) == W.mul(a, b)
    assert W.mul(a, W.inverse(a)) == W.identity
    assert W.length(W.inverse(a)) == W.length(a)
    # left and right actions on alcoves commute
    A = W.alcove_of(b)
    assert W.left_act_alcove(a, A) == W.alcove_of(W.mul(a, b))


def test_translation_of_alcoves():
    W = affine_weyl_group("A2")
    A = (1, 1, 1)
    assert translate_alcove(W, A, (1, 0)) == (2, 1, 2)
