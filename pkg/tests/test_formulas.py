import pytest

from ringdef import formulas, orders, rings, units
from ringdef.formulas import EvalEnvironment, FormulaError, parse, print_formula


@pytest.fixture(scope="module")
def zi():
    return orders.make_quadratic_order(-1)


@pytest.fixture(scope="module")
def zi_env(zi):
    return EvalEnvironment(zi, units.unit_group(zi))


def test_parse_existential():
    ast = parse("exists d:Unit. d - 1 == (e - 1)*x mod (e - 1)^2")
    assert isinstance(ast, formulas.Quant)
    assert ast.kind == "exists" and ast.sort == "Unit" and ast.bound is None


def test_parse_with_explicit_bounds():
    ast = parse("forall e:Unit(5). exists d:Elem(2). d == e")
    assert ast.bound == 5
    assert ast.body.bound == 2


def test_roundtrip_print_parse():
    sources = [
        "forall e:Unit. exists d:Unit. d - 1 == (e - 1)*x mod (e - 1)^2",
        "exists y:Elem(3). (y != 0) and (x*y == 1 or x == 0)",
        "forall a:Elem(1). not (a == 1) or unit(a)",
        formulas.RK_MEMBER_RING_SRC,
    ]
    for src in sources:
        ast = parse(src)
        printed = print_formula(ast)
        assert parse(printed) == ast


def test_missing_body_is_syntax_error():
    with pytest.raises(FormulaError) as err:
        parse("forall x:Elem.")
    assert "line 1" in str(err.value)


def test_unbound_variable_reported():
    with pytest.raises(FormulaError, match="unbound"):
        parse("forall e:Unit. d == e", free_vars=())


def test_duplicate_binding_rejected():
    with pytest.raises(FormulaError, match="bound more than once"):
        parse("forall e:Unit. exists e:Unit. e == e")


def test_sort_error_position():
    with pytest.raises(FormulaError, match="sort"):
        parse("forall e:Ring. e == e")


def test_tautology(zi_env):
    verdict = formulas.eval_bounded(parse("forall e:Unit. e == e"), zi_env)
    assert verdict.holds


def test_rk_member_matches_exact_ring(zi, zi_env):
    ast = formulas.builtin_formula("rk_member")
    sub = rings.congruence_ring_finite_units(zi)
    for a in range(-2, 3):
        for b in range(-2, 3):
            x = zi.element((a, b))
            verdict = formulas.eval_bounded(ast, zi_env.with_assignment(x=x))
            assert verdict.status in ("TRUE", "FALSE")
            assert verdict.holds == sub.contains(x)


def test_rk_member_values(zi, zi_env):
    ast = formulas.builtin_formula("rk_member")
    assert formulas.eval_bounded(ast, zi_env.with_assignment(x=3)).holds
    v = formulas.eval_bounded(ast, zi_env.with_assignment(x=zi.element((0, 1))))
    assert v.status == "FALSE"


def test_ring_encoding_agrees_with_unit_encoding(zi):
    primary = formulas.builtin_formula("rk_member")
    ring_enc = formulas.builtin_formula("rk_member_paper_encoding")
    env = EvalEnvironment(zi, units.unit_group(zi), elem_bound=1)
    for a in range(-2, 3):
        for b in range(-2, 3):
            x = zi.element((a, b))
            v1 = formulas.eval_bounded(primary, env.with_assignment(x=x))
            v2 = formulas.eval_bounded(ring_enc, env.with_assignment(x=x))
            assert v1.leans_positive == v2.leans_positive


def test_existential_witness_rechecks(zi, zi_env):
    ast = parse("exists d:Unit. d*d == 0 - 1")
    verdict = formulas.eval_bounded(ast, zi_env)
    assert verdict.holds
    d = zi.element(verdict.witness["assignment"]["d"])
    assert d * d == -1


def test_monotone_in_bounds():
    z2 = orders.make_quadratic_order(2, maximal=False)
    desc = units.unit_group(z2)
    ast = parse("exists d:Unit. d == x + x + 1")
    # x + x + 1 = 3 + 2 sqrt(2) = (1+sqrt(2))^2 needs exponent bound 2
    x = z2.element((1, 1))
    small = EvalEnvironment(z2, desc, unit_bound=1, assignment={"x": x})
    big = EvalEnvironment(z2, desc, unit_bound=2, assignment={"x": x})
    v_small = formulas.eval_bounded(ast, small)
    v_big = formulas.eval_bounded(ast, big)
    assert v_small.status == "UNKNOWN"
    assert v_big.status == "TRUE"


def test_forall_over_elements_stays_unknown(zi_env):
    ast = parse("forall y:Elem(1). y*0 == 0")
    verdict = formulas.eval_bounded(ast, zi_env)
    assert verdict.status == "UNKNOWN"
    assert verdict.evidence == "positive"


def test_congruence_atom_mod_zero(zi, zi_env):
    ast = parse("x == 1 mod 0")
    assert formulas.eval_bounded(ast, zi_env.with_assignment(x=1)).holds
    assert not formulas.eval_bounded(ast, zi_env.with_assignment(x=3)).holds
    ast2 = parse("x == 1 mod 2")
    assert formulas.eval_bounded(ast2, zi_env.with_assignment(x=3)).holds


def test_unit_atom(zi, zi_env):
    ast = parse("unit(x)")
    assert formulas.eval_bounded(ast, zi_env.with_assignment(x=zi.element((0, 1)))).holds
    assert not formulas.eval_bounded(ast, zi_env.with_assignment(x=2)).holds


def test_missing_assignment_raises(zi_env):
    ast = formulas.builtin_formula("rk_member")
    with pytest.raises(ValueError, match="assignment"):
        formulas.eval_bounded(ast, zi_env)
