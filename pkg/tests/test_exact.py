import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringdef import exact
from ringdef.exact import Poly, ZModRing


small_matrices = st.lists(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    min_size=1,
    max_size=5,
)


def test_hnf_identity():
    assert exact.hnf([(1, 0), (0, 1)]) == ((1, 0), (0, 1))


def test_hnf_worked_examples():
    assert exact.hnf([(2, 0), (1, 1)]) == ((1, 1), (0, 2))
    # lattice generated by (4,0),(0,6),(2,3): oracle below re-derives it
    assert exact.hnf([(4, 0), (0, 6), (2, 3)]) == ((2, 3), (0, 6))


def test_hnf_stacked_matches_enumeration_oracle():
    # enumerate small combinations of the generators and check both spans
    gens = [(4, 0), (0, 6), (2, 3)]
    h = exact.hnf(gens)
    points = set()
    for a in range(-3, 4):
        for b in range(-3, 4):
            for c in range(-3, 4):
                points.add(
                    (4 * a + 2 * c, 6 * b + 3 * c)
                )
    for p in points:
        assert exact.lattice_contains(h, p)
    for row in h:
        assert row in points


@given(small_matrices)
@settings(max_examples=120, deadline=None)
def test_hnf_idempotent(rows):
    h = exact.hnf(rows)
    assert exact.hnf(h) == h


@given(small_matrices)
@settings(max_examples=120, deadline=None)
def test_hnf_preserves_row_lattice(rows):
    h = exact.hnf(rows)
    for row in rows:
        assert exact.lattice_contains(h, row) or not any(row)
    for row in h:
        assert exact.solve_int_rows(rows, row) is not None


@given(small_matrices)
@settings(max_examples=80, deadline=None)
def test_left_kernel_annihilates(rows):
    for k in exact.left_kernel(rows):
        assert not any(exact.vec_mat(k, rows))


def test_solve_int_rows_roundtrip():
    rng = random.Random(7)
    for _ in range(60):
        rows = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(4)]
        coeffs = [rng.randint(-4, 4) for _ in range(4)]
        v = exact.vec_mat(coeffs, rows)
        sol = exact.solve_int_rows(rows, v)
        assert sol is not None
        assert exact.vec_mat(sol, rows) == tuple(v)


def test_reduce_mod_hnf_box():
    h = ((1, 1), (0, 2))
    reduced = exact.reduce_mod_hnf(h, (5, 7))
    assert 0 <= reduced[0] < 1 or reduced[0] == 0
    assert 0 <= reduced[1] < 2
    # representative differs by a lattice vector
    diff = tuple(a - b for a, b in zip((5, 7), reduced))
    assert exact.lattice_contains(h, diff)


def test_det_known_values():
    assert exact.det([[2, 0], [0, 3]]) == 6
    assert exact.det([[1, 2], [3, 4]]) == -2
    assert exact.det([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == 0


def test_lattice_intersect_simple():
    a = ((2, 0), (0, 1))
    b = ((1, 0), (0, 3))
    assert exact.lattice_intersect(a, b) == ((2, 0), (0, 3))


def test_multiplicative_order_trivial_and_small():
    assert exact.multiplicative_order(1, ZModRing(12)) == 1
    assert exact.multiplicative_order(2, ZModRing(9)) == 6


def test_multiplicative_order_brute_force_crosscheck():
    rng = random.Random(3)
    for _ in range(40):
        n = rng.randint(2, 200)
        g = rng.randint(1, n - 1)
        ring = ZModRing(n)
        if not ring.is_invertible(g):
            with pytest.raises(exact.NotInvertible):
                exact.multiplicative_order(g, ring)
            continue
        o = exact.multiplicative_order(g, ring)
        acc = g % n
        brute = 1
        while acc != 1 % n:
            acc = acc * g % n
            brute += 1
        assert o == brute


def test_order_powers_hit_one_exactly_at_multiples():
    ring = ZModRing(45)
    o = exact.multiplicative_order(2, ring)
    for k in range(1, 3 * o + 1):
        assert (pow(2, k, 45) == 1) == (k % o == 0)


def test_zero_divisor_rejected():
    with pytest.raises(exact.NotInvertible):
        exact.multiplicative_order(3, ZModRing(9))


def test_factor_bounded():
    assert exact.factor_bounded(1) == {}
    assert exact.factor_bounded(2**4 * 3**12 * 5**5) == {2: 4, 3: 12, 5: 5}


def test_poly_basic_arithmetic():
    f = Poly([1, 2])
    g = Poly([0, 1])
    assert (f * g).coeffs == (0, 1, 2)
    assert (f + g).coeffs == (1, 3)
    assert (f - f).is_zero()
    assert f.eval_at(3) == 7


def test_poly_exact_div():
    # (X-1)^2 * (X+2) recovered by division
    prod = Poly([1, -2, 1]) * Poly([2, 1])
    assert prod.exact_div(Poly([1, -2, 1])) == Poly([2, 1])
    with pytest.raises(ValueError):
        Poly([1, 1]).exact_div(Poly([1, -2, 1]))


def test_affine_compose_identity_case():
    f = Poly([0, 1])
    assert exact.affine_compose(f, 1, 0) == f


def test_affine_compose_worked_example():
    f = Poly([1, 3, 1])
    g = exact.affine_compose(f, 5, 2)
    assert g == Poly([-1, 11, 1])
    assert exact.affine_identity_holds(f, g, 5, 2)


def test_affine_compose_defining_identity_at_points():
    f = Poly([4, -3, 0, 1])
    mu, beta = 7, -2
    g = exact.affine_compose(f, mu, beta)
    for t in (0, 1, 2):
        assert g.eval_at(mu * t + beta) == mu**3 * f.eval_at(t)


@given(st.integers(-6, 6))
@settings(max_examples=30, deadline=None)
def test_power_congruence_quotient(w):
    from fractions import Fraction

    p, h = exact.power_congruence_quotient(w)
    assert Poly([1, -2, 1]) * h == p
    for e in (2, 3, -4):
        # P(e) is e^w - 1 - w(e-1), scaled by e^|w| when w is negative,
        # and (e-1)^2 divides it
        core = Fraction(e) ** w - 1 - w * (e - 1)
        expected = core if w >= 0 else Fraction(e) ** abs(w) * core
        assert Fraction(p.eval_at(e)) == expected
        assert p.eval_at(e) % (e - 1) ** 2 == 0


def test_pell_fundamental_small():
    assert exact.pell_fundamental(2) == (1, 1)
    assert exact.pell_fundamental(5) == (2, 1)
    assert exact.pell_fundamental(3) == (2, 1)


def test_pell_fundamental_brute_force_crosscheck():
    for d in (2, 3, 5, 6, 7, 10, 11, 13, 61):
        x, y = exact.pell_fundamental(d)
        assert x * x - d * y * y in (1, -1)
        # minimality: no solution with smaller positive y
        for yy in range(1, min(y, 5000)):
            assert not exact.is_square(d * yy * yy + 1)
            assert not exact.is_square(d * yy * yy - 1)


def test_pell_rejects_squares():
    with pytest.raises(ValueError):
        exact.pell_fundamental(9)


def test_int_cbrt():
    for n in (0, 1, 7, 8, 26, 27, 1000, 10**12):
        c = exact.int_cbrt(n)
        assert c**3 <= n < (c + 1) ** 3
