import random

import pytest

from ringdef import exact, orders, units
from ringdef.orders import IdealLattice


def test_fundamental_unit_z_sqrt2():
    ctx = orders.make_quadratic_order(2, maximal=False)
    assert units.fundamental_unit(ctx) == ctx.element((1, 1))


def test_fundamental_unit_maximal_5():
    ctx = orders.make_quadratic_order(5)
    u = units.fundamental_unit(ctx)
    assert u == ctx.element((0, 1))  # (1+sqrt(5))/2
    # brute-force oracle: scan units s + t*w with t minimal; the unit > 1
    # with least t generates the free part, and it has s >= 0
    found = None
    for t in range(1, 10):
        for s in range(0, 40):
            cand = ctx.element((s, t))
            if abs(orders.norm_elem(cand)) == 1:
                found = cand
                break
        if found:
            break
    assert found == u


def test_fundamental_unit_nonmaximal_5():
    ctx = orders.make_quadratic_order(5, maximal=False)
    u = units.fundamental_unit(ctx)
    assert u == ctx.element((2, 1))
    # it is the cube of the maximal-order fundamental unit: 2 + sqrt(5)
    # reads 1 + 2w over the basis {1, w} since sqrt(5) = 2w - 1
    ctx_max = orders.make_quadratic_order(5)
    w = units.fundamental_unit(ctx_max)
    assert w**3 == ctx_max.element((1, 2))


def test_fundamental_unit_rejects_imaginary():
    with pytest.raises(ValueError):
        units.fundamental_unit(orders.make_quadratic_order(-1))


def test_fundamental_unit_larger_d():
    for d in (13, 29, 61):
        ctx = orders.make_quadratic_order(d)
        u = units.fundamental_unit(ctx)
        assert abs(orders.norm_elem(u)) == 1


def test_unit_group_torsion():
    assert units.unit_group(orders.make_quadratic_order(-1)).zeta_order == 4
    assert units.unit_group(orders.make_quadratic_order(-3)).zeta_order == 6
    assert units.unit_group(orders.make_quadratic_order(-3, maximal=False)).zeta_order == 2
    assert units.unit_group(orders.make_quadratic_order(-7)).zeta_order == 2
    assert units.unit_group(orders.make_rational_order()).zeta_order == 2


def test_enumerate_gaussian_units_exhaustive():
    desc = units.unit_group(orders.make_quadratic_order(-1))
    sweep = units.enumerate_units(desc, 10)
    assert sweep.exhaustive
    values = {w.evaluate() for w in sweep}
    ctx = desc.ctx
    i = ctx.element((0, 1))
    assert values == {ctx.one, i, -ctx.one, -i}


def test_enumerate_rank0_minus7():
    desc = units.unit_group(orders.make_quadratic_order(-7))
    sweep = units.enumerate_units(desc, 3)
    assert sweep.exhaustive and len(sweep) == 2


def test_enumerate_rank1_count():
    desc = units.unit_group(orders.make_quadratic_order(2, maximal=False))
    sweep = units.enumerate_units(desc, 2)
    assert not sweep.exhaustive
    assert len(sweep) == 10  # torsion 2 times exponents -2..2
    values = {w.evaluate() for w in sweep}
    assert len(values) == 10


def test_unit_residue_crosschecks_expansion():
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    word = units.UnitExpression(desc, (0, 6))
    assert word.evaluate() == ctx.element((99, 70))
    res = units.unit_residue(word, IdealLattice.from_int(ctx, 5))
    assert res == ctx.element((4, 0))


def test_unit_residue_random_crosscheck():
    rng = random.Random(11)
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    for _ in range(80):
        e0 = rng.randint(0, 1)
        e1 = rng.randint(-8, 8)
        m = rng.randint(2, 50)
        word = units.UnitExpression(desc, (e0, e1))
        lattice = IdealLattice.from_int(ctx, m)
        assert units.unit_residue(word, lattice) == lattice.reduce(word.evaluate())


def test_unit_residue_at_order_is_one():
    ctx = orders.make_quadratic_order(5, maximal=False)
    desc = units.unit_group(ctx)
    lattice = IdealLattice.from_int(ctx, 7)
    q = orders.QuotientRing(ctx, lattice)
    u = desc.free_gens[0]
    k = exact.multiplicative_order(q.reduce(u), q)
    assert units.unit_residue(units.UnitExpression(desc, (0, k)), lattice) == q.one


def test_unit_residue_zero_ideal_cap():
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    word = units.UnitExpression(desc, (0, 10**6))
    with pytest.raises(exact.CapExceeded):
        units.unit_residue(word, IdealLattice.zero(ctx))


def test_expression_inverse_and_norms():
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    for exponents in ((0, 3), (1, -2), (1, 5)):
        word = units.UnitExpression(desc, exponents)
        value = word.evaluate()
        assert abs(orders.norm_elem(value)) == 1
        assert value * word.inverse().evaluate() == 1


def test_congruence_subgroup_gaussian_trivial():
    ctx = orders.make_quadratic_order(-1)
    desc = units.unit_group(ctx)
    sub = units.congruence_subgroup(desc, 2, IdealLattice.from_int(ctx, 2))
    assert sub.desc.zeta == ctx.one and sub.desc.zeta_order == 1
    assert sub.desc.free_gens == ()


def test_congruence_subgroup_full_group():
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    sub = units.congruence_subgroup(desc, 1, IdealLattice.from_int(ctx, 1))
    assert sub.desc.zeta_order == 2
    assert sub.desc.free_gens == (desc.free_gens[0],)


def test_congruence_subgroup_z_sqrt2_mod3():
    # the subgroup of units congruent to 1 mod 3 is generated by the mixed
    # word -(1+sqrt(2))^4, so its squares are generated by (1+sqrt(2))^8
    ctx = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(ctx)
    a = IdealLattice.from_int(ctx, 3)
    sub = units.congruence_subgroup(desc, 2, a)
    u = desc.free_gens[0]
    assert sub.desc.free_gens == (u**8,)
    (word, n) = sub.witnesses[-1]
    assert n == 2
    base = word.evaluate()
    assert a.congruent(base, ctx.one)
    assert base**2 == sub.desc.free_gens[0]


def test_congruence_subgroup_generators_verify():
    random_ideals = [(3,), (4,), (5,), (7,)]
    ctx = orders.make_quadratic_order(-1)
    desc = units.unit_group(ctx)
    for (m,) in random_ideals:
        a = IdealLattice.from_int(ctx, m)
        for n in (1, 2, 3):
            sub = units.congruence_subgroup(desc, n, a)
            for word, power in sub.witnesses:
                value = word.evaluate()
                assert a.congruent(value, ctx.one)
                assert power == n
            for g in (sub.desc.zeta,) + sub.desc.free_gens:
                assert a.congruent(g, ctx.one) or g == ctx.one


def test_declared_group_flag():
    ctx = orders.make_quadratic_order(2, maximal=False)
    u = units.fundamental_unit(ctx)
    desc = units.declared_unit_group(ctx, ctx.one, 1, [u])
    assert desc.completeness == "declared"
    assert not desc.is_exhaustive
