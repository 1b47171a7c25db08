import random

import pytest

from ringdef import construct, orders, units
from ringdef.orders import IdealLattice, QuotientRing


@pytest.fixture(scope="module")
def rational():
    return orders.make_rational_order()


def test_worked_example(rational):
    res = construct.construct_unit(
        rational, IdealLattice.from_int(rational, 5), rational.from_int(2)
    )
    assert res.d == 2
    assert res.u == rational.from_int(-1)
    assert res.a == rational.from_int(3)
    assert res.b == rational.from_int(1)
    assert [c.coords[0] for c in res.f.coeffs] == [1, 3, 1]
    assert [c.coords[0] for c in res.g.coeffs] == [-1, 11, 1]
    ext = res.extension
    assert ext is not None
    assert abs(ext["absolute_norm"]) == 1
    # delta = 5*rho + 2 with rho a root of X^2+3X+1; residue 2 mod 5
    delta = ext["delta"]
    ext_ctx = ext["ctx"]
    five = IdealLattice.from_int(ext_ctx, 5)
    assert five.congruent(delta, orders.embed(rational.from_int(2), ext_ctx))
    assert orders.relative_norm(delta) == orders.embed(res.u, ext_ctx)


def test_beta_equal_unit_gives_linear(rational):
    # beta congruent to an existing unit forces d = 1 and keeps delta rational
    res = construct.construct_unit(
        rational, IdealLattice.from_int(rational, 7), rational.from_int(6)
    )
    assert res.d == 1
    assert res.f.degree == 1
    delta = res.extension["delta"]
    assert delta.ctx == rational
    assert abs(orders.norm_elem(delta)) == 1
    assert IdealLattice.from_int(rational, 7).congruent(delta, rational.from_int(6))


def test_gaussian_instance():
    zi = orders.make_quadratic_order(-1)
    res = construct.construct_unit(zi, IdealLattice.from_int(zi, 3), zi.element((1, 1)))
    for key in ("g_monic", "g_constant_is_u", "affine_identity"):
        assert res.certificates[key]
    assert abs(res.certificates["u_norm"]) == 1
    if res.extension is not None:
        assert res.certificates["delta_congruent_beta"]
        assert res.certificates["delta_norm_consistent"]


def test_rejects_non_coprime(rational):
    with pytest.raises(ValueError, match="beta not coprime"):
        construct.construct_unit(
            rational, IdealLattice.from_int(rational, 10), rational.from_int(4)
        )


def test_conjugate_prime_beta():
    # beta sharing a conjugate prime with the index of I: the principal
    # multiple must dodge it instead of using the index blindly
    zi = orders.make_quadratic_order(-1)
    ideal = IdealLattice.principal(zi, zi.element((2, 1)))  # norm 5
    beta = zi.element((2, -1))  # divides 5 but is coprime to the ideal
    assert QuotientRing(zi, ideal).is_invertible(beta)
    res = construct.construct_unit(zi, ideal, beta)
    assert res.certificates["affine_identity"]
    # the congruence still holds modulo the chosen principal multiple
    chosen = IdealLattice.principal(zi, res.mu)
    assert QuotientRing(zi, chosen).is_invertible(beta)


def test_randomized_suite():
    rng = random.Random(20210)
    contexts = [
        orders.make_rational_order(),
        orders.make_quadratic_order(-1),
        orders.make_quadratic_order(2, maximal=False),
    ]
    done = 0
    attempts = 0
    while done < 100 and attempts < 5000:
        attempts += 1
        ctx = contexts[attempts % len(contexts)]
        g = ctx.element([rng.randint(-9, 9) for _ in range(ctx.degree)])
        if not g:
            continue
        ideal = IdealLattice.principal(ctx, g)
        if not 1 < ideal.index <= 100:
            continue
        beta = ctx.element([rng.randint(-9, 9) for _ in range(ctx.degree)])
        if not QuotientRing(ctx, ideal).is_invertible(beta):
            continue
        res = construct.construct_unit(ctx, ideal, beta)
        assert res.certificates["g_monic"]
        assert res.certificates["g_constant_is_u"]
        assert res.certificates["affine_identity"]
        assert abs(res.certificates["u_norm"]) == 1
        if res.d <= 2:
            assert res.extension is not None
            assert res.certificates["delta_congruent_beta"]
            assert res.certificates["delta_norm_consistent"]
        done += 1
    assert done == 100


def test_serialization(rational):
    res = construct.construct_unit(
        rational, IdealLattice.from_int(rational, 5), rational.from_int(2)
    )
    data = res.to_json()
    assert data["d"] == 2
    assert data["g_coeffs"] == [[-1], [11], [1]]
    assert data["certificates"]["g_monic"]
