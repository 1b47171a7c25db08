import pytest

from ringdef import exact, orders, units, zk
from ringdef.orders import IdealLattice, QuotientRing


def test_modulus_poly_values():
    assert zk.modulus_poly(0) == 0
    assert zk.modulus_poly(1) == 0
    assert zk.modulus_poly(-1) == 0
    assert zk.modulus_poly(2) == 5314410000


def test_modulus_poly_on_ring_elements():
    zi = orders.make_quadratic_order(-1)
    value = zk.modulus_poly(zi.from_int(2))
    assert value == zi.from_int(5314410000)


def test_unit_power_coords_match_expansion():
    side = orders.make_quadratic_order(5, maximal=False)
    u0 = units.fundamental_unit(side)
    power = zk.UnitPower(u0, 7)
    direct = u0**7
    for m in (4, 9, 1000):
        assert power.coords_mod(m) == tuple(c % m for c in direct.coords)


def test_degenerate_witnesses():
    for w in (0, 1, -1):
        bundle = zk.build_integer_witness(w)
        assert bundle.degenerate
        assert bundle.verdict["status"] == "TRUE"
        assert bundle.scale_modulus == 0


def test_w2_full_witness():
    bundle = zk.build_integer_witness(2)
    assert bundle.verdict["status"] == "TRUE"
    assert bundle.scale_modulus == 5 * 5314410000
    assert bundle.order_exponent is not None
    # delta1 is congruent to 1 modulo the scale: coordinates (1, 0)
    side = orders.make_quadratic_order(5, maximal=False)
    base = side.element(bundle.delta1["base"])
    delta1 = zk.UnitPower(base, bundle.delta1["exponent"])
    s, t = delta1.coords_mod(bundle.scale_modulus)
    assert s == 1 and t == 0
    # every per-eps congruence record passed
    assert all(rec["ok"] for rec in bundle.per_eps)
    assert len(bundle.per_eps) == 20


def test_wrong_power_fails_at_tie():
    side = orders.make_quadratic_order(5, maximal=False)
    u0 = units.fundamental_unit(side)
    scale = 5 * zk.modulus_poly(2)
    q = QuotientRing(side, IdealLattice.from_int(side, scale))
    k = exact.multiplicative_order(q.reduce(u0), q)
    delta1 = zk.UnitPower(u0, k)
    wrong_delta2 = zk.UnitPower(u0, 3 * k)  # cube instead of square of the pair
    verdict = zk.check_witness_system(5, 2, delta1, wrong_delta2)
    assert verdict.status == "FALSE"
    assert verdict.refutation["first_failure"] == "power_tie"


def test_non_unit_base_fails_first_equation():
    side = orders.make_quadratic_order(5, maximal=False)
    bad = zk.UnitPower(side.element((2, 3)), 1)
    verdict = zk.check_witness_system(5, 0, bad, bad)
    assert verdict.status == "FALSE"
    assert verdict.refutation["first_failure"] == "unit_delta1"


def test_witness_symmetry_w_and_minus_w():
    plus = zk.build_integer_witness(2)
    minus = zk.build_integer_witness(-2)
    assert plus.verdict["status"] == minus.verdict["status"] == "TRUE"
    # delta2 exponents for w and -w are negatives of each other once the
    # scale moduli agree; the scale only depends on w through even powers
    assert plus.scale_modulus == zk.modulus_poly(2) * 5
    assert minus.scale_modulus == zk.modulus_poly(-2) * 5
    assert plus.delta2["exponent"] == 2 * plus.order_exponent
    assert minus.delta2["exponent"] == -2 * minus.order_exponent


def test_variable_checks_accept_constants_and_reject_lies():
    carrier = orders.make_quadratic_order(2, maximal=False)
    u = units.fundamental_unit(carrier)
    eps = u**3
    records, ok = zk._variable_checks(
        carrier, eps, {"seven": zk.constant_oracle(7), "neg": zk.constant_oracle(-4)}
    )
    assert ok and all(r["ok"] for r in records)
    # an oracle returning inconsistent residues for the additive and
    # multiplicative reductions cannot satisfy the congruence
    lying = {"lie": lambda m: 3 % m if m > 100 else 5 % m}
    _, lying_ok = zk._variable_checks(carrier, eps, lying)
    assert not lying_ok


def test_rejects_bad_d():
    with pytest.raises(ValueError):
        zk.build_integer_witness(2, d=4)
    with pytest.raises(ValueError):
        zk.build_integer_witness(2, d=6)


def test_rejects_real_quadratic_field():
    real = orders.make_quadratic_order(3)
    with pytest.raises(ValueError):
        zk.build_integer_witness(2, f_ctx=real)


def test_imaginary_field_context_accepted():
    zi = orders.make_quadratic_order(-1)
    bundle = zk.build_integer_witness(2, f_ctx=zi)
    assert bundle.verdict["status"] == "TRUE"
    assert "sqrt(-1)" in bundle.field_description
