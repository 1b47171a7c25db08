"""Unit groups of orders: fundamental units, enumeration, modular powers.

Unit groups of quadratic orders are computed and flagged "proven"; unit
groups of larger orders are declared by the caller from generators lifted
out of subfields and flagged "declared", and every verdict that depends
on a declared group is downgraded to bounded evidence by the consumers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import exact, orders
from .exact import CapExceeded, NotInvertible
from .orders import IdealLattice, QuotientRing, RingElement

DIRECT_EVAL_CAP = 10**4


@dataclass(frozen=True)
class UnitGroupDescription:
    """Generators of a group of units: one torsion generator plus free ones.

    completeness is "proven" when the description is known to generate the
    full unit group of the order (quadratic orders), "declared" when the
    generators were supplied by the caller.
    """

    ctx: orders.OrderContext
    zeta: RingElement
    zeta_order: int
    free_gens: tuple
    completeness: str = "proven"

    def __post_init__(self):
        if self.completeness not in ("proven", "declared"):
            raise ValueError("completeness must be 'proven' or 'declared'")
        if abs(orders.norm_elem(self.zeta)) != 1:
            raise ValueError("torsion generator is not a unit")
        if self.zeta_order < 1 or self.zeta**self.zeta_order != 1:
            raise ValueError("torsion generator has wrong order")
        for k in range(1, self.zeta_order):
            if self.zeta**k == 1:
                raise ValueError("torsion order is not minimal")
        for g in self.free_gens:
            if abs(orders.norm_elem(g)) != 1:
                raise ValueError("free generator is not a unit")

    @property
    def rank(self):
        return len(self.free_gens)

    @property
    def is_exhaustive(self):
        """Whole group enumerable: rank zero and generators proven complete."""
        return self.rank == 0 and self.completeness == "proven"

    def generators(self):
        return (self.zeta,) + tuple(self.free_gens)

    def expression(self, exponents):
        return UnitExpression(self, tuple(exponents))

    def identity_expression(self):
        return UnitExpression(self, (0,) * (1 + self.rank))

    def to_json(self):
        return {
            "zeta": list(self.zeta.coords),
            "zeta_order": self.zeta_order,
            "free_generators": [
                {"coords": list(g.coords), "norm": orders.norm_elem(g)}
                for g in self.free_gens
            ],
            "completeness": self.completeness,
        }


class UnitExpression:
    """A word zeta^e0 * u1^e1 * ... over the generators of a description.

    The torsion exponent is normalized modulo the torsion order.  Words
    are evaluated either by explicit expansion or by square-and-multiply
    in a finite quotient; explicit expansion is capped so that nobody
    accidentally expands an astronomically large power.
    """

    __slots__ = ("desc", "exponents")

    def __init__(self, desc, exponents):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != 1 + desc.rank:
            raise ValueError("exponent vector has wrong length")
        self.desc = desc
        self.exponents = (exponents[0] % desc.zeta_order,) + exponents[1:]

    def evaluate(self, cap=DIRECT_EVAL_CAP):
        if sum(abs(e) for e in self.exponents) > cap:
            raise CapExceeded("cap exceeded")
        out = self.desc.ctx.one
        for g, e in zip(self.desc.generators(), self.exponents):
            if e:
                out = out * g**e
        return out

    def residue(self, modulus, cap=DIRECT_EVAL_CAP):
        """The word reduced modulo an ideal lattice, never expanded."""
        if modulus.is_zero:
            return self.evaluate(cap)
        q = QuotientRing(self.desc.ctx, modulus)
        return self.residue_in(q)

    def residue_in(self, q):
        out = q.one
        for g, e in zip(self.desc.generators(), self.exponents):
            if e:
                out = q.mul(out, q.pow(q.reduce(g), e))
        return out

    def inverse(self):
        return UnitExpression(self.desc, tuple(-e for e in self.exponents))

    def __mul__(self, other):
        if other.desc is not self.desc:
            raise ValueError("expressions over different descriptions")
        return UnitExpression(
            self.desc, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, k):
        return UnitExpression(self.desc, tuple(e * k for e in self.exponents))

    def weight(self):
        return max((abs(e) for e in self.exponents[1:]), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, UnitExpression)
            and self.desc is other.desc
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((id(self.desc), self.exponents))

    def __repr__(self):
        return f"UnitExpression{self.exponents}"

    def to_json(self):
        return {"exponents": list(self.exponents)}


@dataclass
class UnitEnumeration:
    """A finite sweep of unit words, flagged exhaustive for rank zero."""

    items: list
    exhaustive: bool

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


def pell_fundamental_unit(ctx):
    """Fundamental unit of Z[sqrt(d)] as an element of ctx's basis."""
    d = ctx.meta["d"]
    x, y = exact.pell_fundamental(d)
    if ctx.meta.get("half_basis"):
        # sqrt(d) = 2w - 1 in the {1, w} basis
        return ctx.element((x - y, 2 * y))
    return ctx.element((x, y))


def fundamental_unit(ctx):
    """A unit > 1 generating the free part of a real quadratic order.

    For Z[sqrt(d)] this is the least Pell solution from the continued
    fraction of sqrt(d).  For the maximal order with d = 1 mod 4, the
    Pell unit may be a cube in the maximal order; the cube root
    (a + b sqrt(d))/2 is recovered exactly from b(d b^2 + 3n) = 2y and
    verified by recubing.
    """
    if ctx.meta.get("kind") != "quadratic":
        raise ValueError("fundamental units only exist for quadratic orders")
    d = ctx.meta["d"]
    if d < 0:
        raise ValueError("imaginary quadratic orders have no fundamental unit")
    x, y = exact.pell_fundamental(d)
    pell = pell_fundamental_unit(ctx)
    if not ctx.meta.get("half_basis"):
        return pell
    n = x * x - d * y * y  # +-1, the norm of the candidate cube root as well
    target = 2 * y
    approx = exact.int_cbrt(max(target // d, 0))
    for b in range(max(approx - 2, 1), approx + 3):
        if b * (d * b * b + 3 * n) == target:
            aa = d * b * b + 4 * n
            if exact.is_square(aa):
                a = math.isqrt(aa)
                if (a - b) % 2 == 0:
                    cand = ctx.element(((a - b) // 2, b))
                    if cand**3 == pell:
                        return cand
    return pell


def _imaginary_torsion(ctx):
    d = ctx.meta["d"]
    if d == -1:
        return ctx.element((0, 1)), 4
    if d == -3 and ctx.meta.get("half_basis"):
        return ctx.element((0, 1)), 6
    return ctx.from_int(-1), 2


def unit_group(ctx):
    """The full unit group of a rational or quadratic order, proven complete."""
    kind = ctx.meta.get("kind")
    if kind == "rational":
        return UnitGroupDescription(ctx, ctx.from_int(-1), 2, (), "proven")
    if kind != "quadratic":
        raise ValueError("unit groups are only computed for quadratic orders")
    d = ctx.meta["d"]
    if d < 0:
        zeta, order = _imaginary_torsion(ctx)
        return UnitGroupDescription(ctx, zeta, order, (), "proven")
    return UnitGroupDescription(ctx, ctx.from_int(-1), 2, (fundamental_unit(ctx),), "proven")


def declared_unit_group(ctx, zeta, zeta_order, free_gens):
    return UnitGroupDescription(ctx, zeta, zeta_order, tuple(free_gens), "declared")


def enumerate_units(desc, exponent_bound):
    """All words with |free exponent| <= bound, sorted by weight.

    Rank-zero descriptions enumerate the whole finite group regardless of
    the bound and are flagged exhaustive.
    """
    if exponent_bound < 0:
        raise ValueError("exponent bound must be nonnegative")
    torsion = range(desc.zeta_order)
    if desc.rank == 0:
        items = [UnitExpression(desc, (t,)) for t in torsion]
        return UnitEnumeration(items, desc.is_exhaustive)
    span = sorted(range(-exponent_bound, exponent_bound + 1), key=lambda e: (abs(e), e))
    items = []

    def rec(prefix, depth):
        if depth == desc.rank:
            for t in torsion:
                items.append(UnitExpression(desc, (t,) + tuple(prefix)))
            return
        for e in span:
            rec(prefix + [e], depth + 1)

    rec([], 0)
    items.sort(key=lambda w: (w.weight(), w.exponents))
    return UnitEnumeration(items, False)


def unit_residue(expr, modulus, cap=DIRECT_EVAL_CAP):
    """Residue of a unit word modulo an ideal, by square-and-multiply."""
    return expr.residue(modulus, cap)


@dataclass
class CongruenceSubgroup:
    """Result of forming {u^n : u in the group, u = 1 mod a}.

    Each generator of the resulting description carries a witness: a word
    w over the parent group with w = 1 mod a and generator = w^n.
    """

    desc: UnitGroupDescription
    witnesses: list = field(default_factory=list)
    modulus: IdealLattice = None
    power: int = 1


def congruence_subgroup(desc, n, a, order_cap=exact.ORDER_ITERATION_CAP):
    """Generators of the n-th powers of units congruent to 1 mod a.

    The subgroup of units congruent to 1 is located exactly: its torsion
    part is cyclic and found by scanning powers of zeta, and for rank one
    the free part is generated by the mixed word zeta^i * u^k with the
    least k >= 1 landing in the subgroup (the torsion twist matters: the
    generator need not be a pure power of u).  Raising the generators to
    the n-th power then generates the image, since the group is abelian.
    """
    if a.is_zero:
        raise ValueError("congruence subgroup needs a finite quotient")
    if n < 1:
        raise ValueError("n must be positive")
    q = QuotientRing(desc.ctx, a)
    one = q.one
    zr = q.reduce(desc.zeta)
    t0 = next(i for i in range(1, desc.zeta_order + 1) if q.pow(zr, i) == one)
    witnesses = []
    new_zeta = desc.zeta ** (t0 * n)
    zeta_word = UnitExpression(desc, (t0,) + (0,) * desc.rank)
    if new_zeta != desc.ctx.one:
        witnesses.append((zeta_word, n))
    order = 1
    probe = new_zeta
    while probe != desc.ctx.one:
        probe = probe * new_zeta
        order += 1
    free = []
    if desc.rank == 1:
        u = desc.free_gens[0]
        ur = q.reduce(u)
        o_u = exact.multiplicative_order(ur, q, cap=order_cap)
        zeta_residues = [q.pow(zr, i) for i in range(desc.zeta_order)]
        found = None
        acc = one
        for k in range(1, o_u + 1):
            acc = q.mul(acc, ur)
            for i, zres in enumerate(zeta_residues):
                if q.mul(zres, acc) == one:
                    found = (i, k)
                    break
            if found:
                break
        i_star, k_star = found
        word = UnitExpression(desc, (i_star, k_star))
        free.append(word.evaluate() ** n)
        witnesses.append((word, n))
    elif desc.rank > 1:
        raise ValueError("congruence subgroups are implemented for rank <= 1")
    result = UnitGroupDescription(desc.ctx, new_zeta, order, tuple(free), desc.completeness)
    return CongruenceSubgroup(result, witnesses, a, n)
