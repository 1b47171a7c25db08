import json
import math
import random

import pytest

from ringdef import exact, orders, rings, unit_eq, units
from ringdef.orders import IdealLattice, QuotientRing


@pytest.fixture(scope="module")
def z2():
    return orders.make_quadratic_order(2, maximal=False)


@pytest.fixture(scope="module")
def z2_desc(z2):
    return units.unit_group(z2)


def test_triple_rational_is_empty():
    desc = units.unit_group(orders.make_rational_order())
    assert len(unit_eq.solve_unit_triple(desc, 0)) == 0


def test_triple_contains_classic_solution(z2, z2_desc):
    found = unit_eq.solve_unit_triple(z2_desc, 5)
    u = z2.element((1, 1))
    # (1+sqrt(2)) + (1-sqrt(2)) + (-1) = 1, with 1-sqrt(2) = -u^{-1}
    target = (u, z2.element((1, -1)), -z2.one)
    assert z2.element((1, -1)) == -u.inverse()
    values = [tuple(w.evaluate() for w in triple) for triple in found]
    assert target in values
    assert found.exhaustiveness == "bounded"


def test_triple_solutions_reevaluate_to_one(z2_desc):
    for triple in unit_eq.solve_unit_triple(z2_desc, 4):
        total = sum((w.evaluate() for w in triple), start=z2_desc.ctx.zero)
        assert total == 1
        assert all(w.evaluate() != 1 for w in triple)


def test_triple_bound_zero_torsion_only(z2_desc):
    found = unit_eq.solve_unit_triple(z2_desc, 0)
    # torsion only: candidates are +-1, and (-1) + (-1) + (-1) != 1
    assert len(found) == 0


def test_divisibility_divisor_case(z2_desc):
    rng = random.Random(6)
    for _ in range(40):
        b = rng.randint(1, 6) * rng.choice((1, -1))
        a = b * rng.randint(1, 5)
        word = units.UnitExpression(z2_desc, (rng.randint(0, 1), rng.choice((1, 2, -1))))
        divides, cert = unit_eq.power_divisibility(word, a, b)
        assert divides
        assert cert["ideal_matches_gcd"]
        assert abs(cert["quotient_norm"]) == 1 or cert["quotient_norm"] is not None


def test_divisibility_norm_counterexample(z2, z2_desc):
    word = units.UnitExpression(z2_desc, (0, 1))
    divides, cert = unit_eq.power_divisibility(word, 3, 2)
    assert not divides
    u = z2.element((1, 1))
    assert orders.norm_elem(u**3 - 1) == -14
    assert orders.norm_elem(u**2 - 1) == -4


def test_gcd_certificate(z2, z2_desc):
    word = units.UnitExpression(z2_desc, (0, 1))
    _, cert = unit_eq.power_divisibility(word, 6, 4)
    u = z2.element((1, 1))
    expected = IdealLattice.principal(z2, u**2 - 1)
    assert cert["joint"] == expected.to_json()


def test_unit_quotient_when_divides(z2, z2_desc):
    # whenever the division fires, the quotient by the gcd power is a unit
    word = units.UnitExpression(z2_desc, (0, 1))
    for a in range(1, 13):
        for b in range(1, 13):
            divides, cert = unit_eq.power_divisibility(word, a, b)
            if divides:
                assert abs(cert["quotient_norm"]) == 1


def test_rejects_torsion(z2_desc):
    torsion = units.UnitExpression(z2_desc, (1, 0))
    with pytest.raises(ValueError):
        unit_eq.power_divisibility(torsion, 2, 1)
    with pytest.raises(ValueError):
        unit_eq.triple_exponent_bound(torsion, 3)


def test_triple_exponent_bound_small(z2_desc):
    word = units.UnitExpression(z2_desc, (0, 1))
    n, s = unit_eq.triple_exponent_bound(word, 5)
    assert 1 in s and -1 in s
    assert n == max(s)


def test_triple_exponent_bound_empty():
    # over the rationals nothing solves the triple equation
    desc = units.unit_group(orders.make_rational_order())
    word = units.UnitExpression(desc, (0,))
    with pytest.raises(ValueError):
        unit_eq.triple_exponent_bound(word, 3)


def _certificate_fixture(z2):
    u = units.fundamental_unit(z2)
    q = QuotientRing(z2, IdealLattice.from_int(z2, 125))
    k = exact.multiplicative_order(q.reduce(u), q)
    eps = u**k
    return u, k, eps, unit_eq.obstruction_witness(z2, 5, 1, eps)


def test_obstruction_certificate(z2):
    u, k, eps, cert = _certificate_fixture(z2)
    assert cert.image_rank() < cert.degree == 2
    assert cert.verify(z2)
    # the excluded congruence really has no solution among sampled units:
    # (eps-1)*5*n*x = w - 1 mod 5^{j+1} * a for units w = 1 mod 5^j * a
    pj_a = IdealLattice(z2, cert.pj_a_rows)
    finer = pj_a.scale(5)
    x = z2.element(cert.witness_coords)
    target_scale = (eps - 1) * 5 * x
    for e in range(-40, 41):
        for sign in (1, -1):
            w = sign * u**e
            if not pj_a.contains(w - 1):
                continue
            for n in (1, 2, 3, 4):
                assert not finer.congruent(n * target_scale, w - 1)


def test_obstruction_serialization_roundtrip(z2):
    _, _, _, cert = _certificate_fixture(z2)
    data = json.loads(json.dumps(cert.to_json()))
    back = unit_eq.ObstructionCertificate.from_json(data)
    assert back.verify(z2)
    assert back.witness_coords == cert.witness_coords


def test_obstruction_rejects_degenerate(z2):
    with pytest.raises(ValueError):
        unit_eq.obstruction_witness(z2, 5, 1, z2.one)
    u = units.fundamental_unit(z2)
    with pytest.raises(ValueError):
        unit_eq.obstruction_witness(z2, 5, 1, u)  # not congruent to 1 mod 25


def test_obstruction_requires_proven_group(z2):
    u = units.fundamental_unit(z2)
    declared = units.declared_unit_group(z2, z2.from_int(-1), 2, [u])
    q = QuotientRing(z2, IdealLattice.from_int(z2, 125))
    k = exact.multiplicative_order(q.reduce(u), q)
    with pytest.raises(ValueError, match="generators incomplete"):
        unit_eq.obstruction_witness(z2, 5, 1, u**k, desc=declared)


def test_certificate_refutes_scaled_witness(z2):
    u, k, eps, cert = _certificate_fixture(z2)
    x = z2.element(cert.witness_coords)
    group = units.unit_group(z2)
    for m in (1, 2, 3, 5, 10):
        verdict = rings.membership_probe(m * x, group, 2, 2, obstructions=[cert])
        assert verdict.status == "FALSE"
        assert verdict.refutation["kind"] == "obstruction-certificate"
    # p-valuation beyond j is outside the certificate's reach
    assert cert.excludes(125 * x) is None
    assert cert.excludes(z2.zero) is None
