"""Constructive production of units with a prescribed residue.

Given an order, an ideal I, and beta invertible mod I, this module builds
polynomial data (d, u, a, b, f, g) so that the monic polynomial
g = mu^d f((X - beta)/mu) has a unit constant term; any root delta of g
is then a unit of the extension it generates, congruent to beta mod I.
Everything is certified by exact identities, and for d <= 2 the root is
materialized in an explicit extension order and re-checked there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import exact, orders, units
from .exact import Poly
from .orders import IdealLattice, QuotientRing, QuotientTooLarge, RingElement

SUBGROUP_CLOSURE_CAP = 10**7


@dataclass
class UnitConstruction:
    ctx: orders.OrderContext
    ideal_input: IdealLattice
    mu: RingElement
    beta: RingElement
    d: int
    u: RingElement
    a: RingElement
    b: RingElement
    f: Poly
    g: Poly
    u_word: units.UnitExpression
    extension: dict | None = None
    certificates: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "mu": list(self.mu.coords),
            "beta": list(self.beta.coords),
            "d": self.d,
            "u": list(self.u.coords),
            "a": list(self.a.coords),
            "b": list(self.b.coords),
            "f_coeffs": [list(c.coords) for c in self.f.coeffs],
            "g_coeffs": [list(c.coords) for c in self.g.coeffs],
            "u_word": self.u_word.to_json(),
            "certificates": self.certificates,
        }
        if self.extension is not None:
            out["extension"] = {
                "delta": list(self.extension["delta"].coords),
                "relative_norm": list(self.extension["relative_norm"].coords),
                "absolute_norm": self.extension["absolute_norm"],
            }
        return out


def _subgroup_closure(q, generators, cap=SUBGROUP_CLOSURE_CAP):
    """Closure of generator residues under multiplication, with witness words.

    Returns {residue coords: exponent vector over the generators}.  Works
    because the ambient group is finite and abelian, so products of
    generators eventually reach every element, inverses included.
    """
    table = {q.one.coords: tuple(0 for _ in generators)}
    frontier = [q.one]
    while frontier:
        nxt = []
        for elem in frontier:
            word = table[elem.coords]
            for gi, g in enumerate(generators):
                prod = q.mul(elem, g)
                if prod.coords not in table:
                    new_word = tuple(
                        e + (1 if k == gi else 0) for k, e in enumerate(word)
                    )
                    table[prod.coords] = new_word
                    nxt.append(prod)
                    if len(table) > cap:
                        raise QuotientTooLarge("quotient too large")
        frontier = nxt
    return table


def _exact_divide(x, divisor):
    """The element q with q * divisor = x; raises if there is none."""
    rows = orders.multiplication_rows(divisor)
    sol = exact.solve_int_rows(rows, x.coords)
    if sol is None:
        raise ArithmeticError("exact division failed")
    return divisor.ctx.element(sol)


def _principal_multiple(ctx, ideal, beta, height_cap=12):
    """A generator mu of a principal ideal inside I with beta coprime to (mu).

    The index of I is tried first: it is a rational integer, always lies
    in I, and usually works.  When beta shares a factor with it (conjugate
    primes of the index can divide beta even though beta is coprime to I),
    small elements of I are scanned by coefficient height until one with
    beta invertible modulo it appears; one exists because beta misses at
    least one element of I outside each bad prime.
    """
    candidates = [ctx.from_int(ideal.index)]
    for height in range(1, height_cap + 1):
        span = sorted(range(-height, height + 1), key=lambda e: (abs(e), e))
        for coeffs in itertools.product(span, repeat=ctx.degree):
            if max((abs(c) for c in coeffs), default=0) == height:
                candidates.append(ctx.element(exact.vec_mat(coeffs, ideal.rows)))
    for mu in candidates:
        if not mu:
            continue
        lattice = IdealLattice.principal(ctx, mu)
        if QuotientRing(ctx, lattice).is_invertible(beta):
            return mu, lattice
    raise exact.CapExceeded("cap exceeded")


def construct_unit(ctx, ideal, beta, desc=None, enumeration_cap=10**7):
    """Build the certified data (d, u, a, b, f, g) for beta coprime to I.

    The ideal is first replaced by a principal multiple (mu) chosen so
    that beta stays coprime to it, which is harmless since any multiple
    serves.  d is the order of beta in the unit group of the quotient
    modulo the image of the units of the order; u is a unit word hitting
    (-beta)^d there; a and b solve a*mu*(-beta)^{d-1} + mu^d*b = u - (-beta)^d
    exactly.  For d <= 2 the root delta = mu*rho + beta is materialized
    in an explicit extension and its norm and residue are re-checked.
    """
    if isinstance(beta, int):
        beta = ctx.from_int(beta)
    if ideal.is_zero:
        raise ValueError("ideal must be nonzero")
    if desc is None:
        desc = units.unit_group(ctx)
    q_input = QuotientRing(ctx, ideal)
    if not q_input.is_invertible(beta):
        raise ValueError("beta not coprime to I")
    mu, modulus = _principal_multiple(ctx, ideal, beta)
    q = QuotientRing(ctx, modulus)
    if q.index > enumeration_cap:
        raise QuotientTooLarge("quotient too large")
    gens = [q.reduce(g) for g in desc.generators()]
    unit_image = _subgroup_closure(q, gens, cap=enumeration_cap)
    beta_res = q.reduce(beta)
    d = None
    acc = q.one
    for k in range(1, q.index + 1):
        acc = q.mul(acc, beta_res)
        if acc.coords in unit_image:
            d = k
            break
    if d is None:
        raise ArithmeticError("beta has no finite order modulo the unit image")
    minus_beta = -beta
    target = q.pow(q.reduce(minus_beta), d)
    word_exps = unit_image[target.coords]
    u_word = units.UnitExpression(desc, word_exps)
    u = u_word.evaluate()
    # solve a*mu*(-beta)^{d-1} + mu^d * b = u - (-beta)^d
    rhs = u - minus_beta**d
    c = _exact_divide(rhs, mu)
    power = minus_beta ** (d - 1)
    mu_power = mu ** (d - 1)
    sub_modulus = IdealLattice.principal(ctx, mu_power)
    q_sub = QuotientRing(ctx, sub_modulus)
    a = q_sub.mul(q_sub.invert(power), q_sub.reduce(c))
    rem = c - a * power
    b = _exact_divide(rem, mu_power)
    one = ctx.one
    f_coeffs = [ctx.zero] * (d + 1)
    f_coeffs[d] = f_coeffs[d] + one
    f_coeffs[d - 1] = f_coeffs[d - 1] + a
    f_coeffs[0] = f_coeffs[0] + b
    f = Poly(f_coeffs)
    g = exact.affine_compose(f, mu, beta, one=one)
    certificates = {
        "g_monic": g.is_monic(one),
        "g_constant_is_u": g.eval_at(ctx.zero) == u,
        "u_norm": orders.norm_elem(u),
        "affine_identity": exact.affine_identity_holds(f, g, mu, beta, one=one),
        "quotient_index": q.index,
    }
    if not certificates["g_monic"]:
        raise ArithmeticError("g is not monic")
    if not certificates["g_constant_is_u"]:
        raise ArithmeticError("g(0) differs from the chosen unit")
    if abs(certificates["u_norm"]) != 1:
        raise ArithmeticError("g(0) is not a unit")
    if not certificates["affine_identity"]:
        raise ArithmeticError("affine substitution identity failed")
    extension = None
    if d == 1:
        # f is linear: rho = -(a + b), delta = beta - mu*(a+b) = -u stays in ctx
        delta = beta - mu * (a + b)
        extension = {
            "ctx": ctx,
            "delta": delta,
            "relative_norm": delta if ctx.degree == 1 else orders.relative_norm(delta),
            "absolute_norm": orders.norm_elem(delta),
        }
        certificates["delta_congruent_beta"] = modulus.congruent(delta, beta)
        # for linear g the root is (-1)^d g(0) = -u itself
        certificates["delta_norm_consistent"] = delta == -u
    elif d == 2:
        ext = orders.make_relative_quadratic_extension(ctx, a, b)
        nb = ctx.degree
        rho = ext.element(tuple(1 if k == nb else 0 for k in range(2 * nb)))
        delta = orders.embed(mu, ext) * rho + orders.embed(beta, ext)
        rel_norm = orders.relative_norm(delta)
        rel_norm_base = orders.descend(rel_norm, ctx)
        ext_modulus = orders.extend_ideal(ideal, ext)
        extension = {
            "ctx": ext,
            "delta": delta,
            "relative_norm": rel_norm_base,
            "absolute_norm": orders.norm_elem(delta),
        }
        # for monic quadratic g, delta * sigma(delta) = g(0) = u
        certificates["delta_norm_consistent"] = rel_norm_base == u
        certificates["delta_congruent_beta"] = orders.congruent_mod_ideal(
            delta, orders.embed(beta, ext), ext_modulus
        )
        if abs(orders.norm_elem(delta)) != 1:
            raise ArithmeticError("materialized delta is not a unit")
    if extension is not None:
        if not certificates["delta_congruent_beta"]:
            raise ArithmeticError("delta is not congruent to beta")
        if not certificates["delta_norm_consistent"]:
            raise ArithmeticError("norm of delta is inconsistent with g(0)")
    return UnitConstruction(
        ctx=ctx,
        ideal_input=ideal,
        mu=mu,
        beta=beta,
        d=d,
        u=u,
        a=a,
        b=b,
        f=f,
        g=g,
        u_word=u_word,
        extension=extension,
        certificates=certificates,
    )
