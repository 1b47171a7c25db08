"""Brute-force unit-equation machinery.

Covers bounded solving of x1 + x2 + x3 = 1 in units, divisibility and
gcd identities among the elements u^a - 1, the exponent bound extracted
from the triple-solution set, and an exact mod-p linear-algebra
certificate showing that certain scaled elements admit no congruence
witness among units at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact, orders, units
from .orders import IdealLattice, QuotientRing


@dataclass
class TripleSolutionSet:
    """Solutions of x1 + x2 + x3 = 1 with every x_i a unit word != 1.

    Always flagged "bounded": the exponent grid is finite, and nothing
    here claims exhaustiveness beyond it.
    """

    solutions: list
    exponent_bound: int
    exhaustiveness: str = "bounded"

    def __len__(self):
        return len(self.solutions)

    def __iter__(self):
        return iter(self.solutions)


def solve_unit_triple(desc, exponent_bound):
    """All bounded triples of unit words summing to 1, none equal to 1.

    Quadratic in the enumeration size: the third coordinate is looked up
    in a value table instead of swept.  Deterministic ordering.
    """
    if exponent_bound < 0:
        raise ValueError("exponent bound must be nonnegative")
    words = list(units.enumerate_units(desc, exponent_bound))
    values = [w.evaluate() for w in words]
    one = desc.ctx.one
    table = {}
    for w, v in zip(words, values):
        table.setdefault(v.coords, w)
    solutions = []
    for w1, v1 in zip(words, values):
        if v1 == one:
            continue
        for w2, v2 in zip(words, values):
            if v2 == one:
                continue
            v3 = one - v1 - v2
            if v3 == one:
                continue
            w3 = table.get(v3.coords)
            if w3 is not None:
                solutions.append((w1, w2, w3))
    return TripleSolutionSet(solutions, exponent_bound)


def _require_infinite_order(expr):
    if all(e == 0 for e in expr.exponents[1:]):
        raise ValueError("unit must have infinite order")


def power_divisibility(eps_expr, a, b):
    """Whether eps^b - 1 divides eps^a - 1, plus a gcd certificate.

    The certificate verifies that the ideal generated by eps^a - 1 and
    eps^b - 1 equals the principal ideal of eps^gcd(a,b) - 1, by HNF
    equality.  When the division holds, the quotient of eps^b - 1 by
    eps^gcd - 1 is computed and (per the gcd structure) must be a unit.
    """
    if a == 0 or b == 0:
        raise ValueError("exponents must be nonzero")
    _require_infinite_order(eps_expr)
    ctx = eps_expr.desc.ctx
    eps = eps_expr.evaluate()
    pa = eps**a - 1
    pb = eps**b - 1
    d = math.gcd(a, b)
    pd = eps**d - 1
    lattice_b = IdealLattice.principal(ctx, pb)
    divides = lattice_b.contains(pa)
    joint = IdealLattice.from_generators(ctx, [pa, pb])
    principal_d = IdealLattice.principal(ctx, pd)
    certificate = {
        "a": a,
        "b": b,
        "gcd": d,
        "ideal_matches_gcd": joint == principal_d,
        "joint": joint.to_json(),
        "principal_gcd": principal_d.to_json(),
    }
    if not certificate["ideal_matches_gcd"]:
        raise ArithmeticError("gcd ideal identity failed")
    if divides:
        rows = orders.multiplication_rows(pd)
        sol = exact.solve_int_rows(rows, pb.coords)
        if sol is None:
            raise ArithmeticError("claimed divisibility has no exact quotient")
        quotient = ctx.element(sol)
        certificate["quotient_coords"] = list(quotient.coords)
        certificate["quotient_norm"] = orders.norm_elem(quotient)
        if abs(certificate["quotient_norm"]) != 1:
            raise ArithmeticError("quotient by the gcd power is not a unit")
    return divides, certificate


def triple_exponent_bound(u_expr, exponent_bound):
    """Sup of the exponents b (within the bound) for which u^b + x2 + x3 = 1
    has a solution in units different from 1.

    Returns (N, S) with S the set of such b and N = max(S) (0 when S is
    empty).  N is a lower bound for the true sup: the finiteness of the
    full solution set is not effective, so downstream consumers must pair
    any use of N with direct verification.
    """
    _require_infinite_order(u_expr)
    desc = u_expr.desc
    one = desc.ctx.one
    words = list(units.enumerate_units(desc, exponent_bound))
    values = [w.evaluate() for w in words]
    table = {}
    for w, v in zip(words, values):
        table.setdefault(v.coords, w)
    found = set()
    u = u_expr.evaluate()
    for b in range(-exponent_bound, exponent_bound + 1):
        if b == 0:
            continue
        v1 = u**b
        if v1 == one:
            continue
        for w2, v2 in zip(words, values):
            if v2 == one:
                continue
            v3 = one - v1 - v2
            if v3 == one:
                continue
            if v3.coords in table:
                found.add(b)
                break
    n = max(found) if found else 0
    return n, found


@dataclass
class ObstructionCertificate:
    """Exact mod-p witness that no unit delta solves
    (eps-1) p^j n x = delta - 1  (mod p^{j+1} (eps-1) O)  for any n prime to p.

    The data: the p-part ``a`` of (eps-1), generators of the group W of
    units congruent to 1 mod p^j a, the matrix of u -> u - 1 on those
    generators inside V = p^j a / p^{j+1} a, the mod-p matrix of
    x -> (eps-1) p^j x, and the chosen witness x whose image vector (and
    every nonzero scalar multiple of it) avoids the image of W.  The
    certificate re-verifies from this data alone by rank computations.
    """

    p: int
    j: int
    eps_coords: tuple
    a_rows: tuple
    pj_a_rows: tuple
    w_generators: list
    lambda_vectors: list
    phi_rows: list
    witness_coords: tuple
    target_vector: tuple
    degree: int

    def to_json(self):
        return {
            "p": self.p,
            "j": self.j,
            "eps": list(self.eps_coords),
            "a_lattice": [list(r) for r in self.a_rows],
            "pj_a_lattice": [list(r) for r in self.pj_a_rows],
            "w_generators": self.w_generators,
            "lambda_matrix": [list(v) for v in self.lambda_vectors],
            "phi_matrix": [list(r) for r in self.phi_rows],
            "witness": list(self.witness_coords),
            "target_vector": list(self.target_vector),
            "degree": self.degree,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            p=data["p"],
            j=data["j"],
            eps_coords=tuple(data["eps"]),
            a_rows=tuple(tuple(r) for r in data["a_lattice"]),
            pj_a_rows=tuple(tuple(r) for r in data["pj_a_lattice"]),
            w_generators=data["w_generators"],
            lambda_vectors=[tuple(v) for v in data["lambda_matrix"]],
            phi_rows=[tuple(r) for r in data["phi_matrix"]],
            witness_coords=tuple(data["witness"]),
            target_vector=tuple(data["target_vector"]),
            degree=data["degree"],
        )

    def verify(self, ctx):
        """Re-run every linear-algebra claim from the serialized data."""
        p, j = self.p, self.j
        eps = ctx.element(self.eps_coords)
        if not IdealLattice.from_int(ctx, p ** (j + 1)).contains(eps - 1):
            return False
        a_lat = IdealLattice(ctx, self.a_rows)
        pj_a = IdealLattice(ctx, self.pj_a_rows)
        if pj_a != a_lat.scale(p**j):
            return False
        for gen in self.w_generators:
            w = ctx.element(gen["coords"])
            if abs(orders.norm_elem(w)) != 1:
                return False
            if not pj_a.contains(w - 1):
                return False
        # lambda vectors: coordinates of w - 1 over the p^j a basis, mod p
        for gen, vec in zip(self.w_generators, self.lambda_vectors):
            w = ctx.element(gen["coords"])
            coords = exact.solve_over_hnf(self.pj_a_rows, (w - 1).coords)
            if coords is None or tuple(c % p for c in coords) != tuple(
                v % p for v in vec
            ):
                return False
        n = self.degree
        if exact.fp_rank(self.lambda_vectors, p) >= n and n > 0:
            return False
        # phi rows: V-coordinates of (eps-1) p^j e_t, invertible mod p
        scale = p**j
        for t, row in enumerate(self.phi_rows):
            e_t = ctx.element(tuple(1 if k == t else 0 for k in range(n)))
            image = (eps - 1) * scale * e_t
            coords = exact.solve_over_hnf(self.pj_a_rows, image.coords)
            if coords is None or tuple(c % p for c in coords) != tuple(
                v % p for v in row
            ):
                return False
        if exact.fp_rank(self.phi_rows, p) != n:
            return False
        got = exact.vec_mat(self.witness_coords, self.phi_rows)
        if tuple(c % p for c in got) != tuple(v % p for v in self.target_vector):
            return False
        for scalar in range(1, p):
            scaled = tuple(scalar * v for v in self.target_vector)
            if exact.fp_in_span(scaled, self.lambda_vectors, p):
                return False
        return True

    def image_rank(self):
        return exact.fp_rank(self.lambda_vectors, self.p)

    def excludes(self, x):
        """Does the certificate rule out every unit witness for this x?

        Applies when x = m * witness with m a nonzero integer whose p-adic
        valuation is at most j: powering a hypothetical witness delta by
        p^{j-s} lands in the excluded congruence, since (eps-1)^2 is
        contained in p^{j+1}(eps-1) under the certificate hypothesis.
        Returns the scale data when applicable, else None.
        """
        if x.ctx.degree != self.degree:
            return None
        w = self.witness_coords
        pivot = next((i for i, c in enumerate(w) if c), None)
        if pivot is None:
            return None
        ratio = Fraction(x.coords[pivot], w[pivot])
        if ratio == 0 or ratio.denominator != 1:
            return None
        for xc, wc in zip(x.coords, w):
            if Fraction(xc) != ratio * wc:
                return None
        m = int(ratio)
        s = 0
        mm = abs(m)
        while mm % self.p == 0:
            mm //= self.p
            s += 1
        if s > self.j:
            return None
        return {"m": m, "p_valuation": s}


def obstruction_witness(ctx, p, j, eps, desc=None):
    """Build an :class:`ObstructionCertificate` for a unit eps = 1 mod p^{j+1}.

    Follows the exact construction: a is the p-part of (eps-1), found by
    saturation; W is located by scanning torsion twists of powers of the
    fundamental unit; the image of u -> u-1 in V = p^j a / p^{j+1} a has
    rank below dim V, and the witness x is pulled back through the mod-p
    isomorphism x -> (eps-1) p^j x onto a vector outside that image.
    """
    from sympy import isprime

    if not isprime(p):
        raise ValueError("p must be prime")
    if j < 1:
        raise ValueError("j must be positive")
    if eps == 1:
        raise ValueError("hypothesis violated")
    if desc is None:
        desc = units.unit_group(ctx)
    if desc.completeness != "proven":
        raise ValueError("generators incomplete")
    if not IdealLattice.from_int(ctx, p ** (j + 1)).contains(eps - 1):
        raise ValueError("hypothesis violated")
    n = ctx.degree
    a_lat = orders.p_part_of_element(ctx, eps - 1, p)
    pj1 = IdealLattice.from_int(ctx, p ** (j + 1))
    if a_lat.add(pj1) != pj1:
        # the p-part must be divisible by p^{j+1}: a + (p^{j+1}) = (p^{j+1})
        raise ArithmeticError("p-part is not divisible by p^{j+1}")
    pj_a = a_lat.scale(p**j)
    q_pj_a = QuotientRing(ctx, pj_a)
    # torsion units congruent to 1 mod p^j a must be trivial
    for i in range(1, desc.zeta_order):
        if pj_a.contains(desc.zeta**i - 1):
            raise ArithmeticError("nontrivial torsion inside W; hypothesis fails")
    w_generators = []
    lambda_vectors = []
    if desc.rank == 1:
        u = desc.free_gens[0]
        o_u = exact.multiplicative_order(q_pj_a.reduce(u), q_pj_a)
        zeta_residues = [
            q_pj_a.reduce(desc.zeta**i) for i in range(desc.zeta_order)
        ]
        found = None
        acc = q_pj_a.one
        ur = q_pj_a.reduce(u)
        for k in range(1, o_u + 1):
            acc = q_pj_a.mul(acc, ur)
            for i, zres in enumerate(zeta_residues):
                if q_pj_a.mul(zres, acc) == q_pj_a.one:
                    found = (i, k)
                    break
            if found:
                break
        i_star, k_star = found
        w = desc.zeta**i_star * u**k_star
        w_generators.append(
            {
                "torsion_exponent": i_star,
                "free_exponent": k_star,
                "coords": list(w.coords),
                "norm": orders.norm_elem(w),
            }
        )
        coords = exact.solve_over_hnf(pj_a.rows, (w - 1).coords)
        lambda_vectors.append(tuple(c % p for c in coords))
    elif desc.rank > 1:
        raise ValueError("generators incomplete")
    if exact.fp_rank(lambda_vectors, p) >= n:
        raise ArithmeticError("image of the unit map fills V; cokernel claim fails")
    scale = p**j
    phi_rows = []
    for t in range(n):
        e_t = ctx.element(tuple(1 if k == t else 0 for k in range(n)))
        image = (eps - 1) * scale * e_t
        coords = exact.solve_over_hnf(pj_a.rows, image.coords)
        phi_rows.append(tuple(c % p for c in coords))
    if exact.fp_rank(phi_rows, p) != n:
        raise ArithmeticError("scaling map is not a mod-p isomorphism")
    target = None
    for t in range(n):
        cand = tuple(1 if k == t else 0 for k in range(n))
        if not exact.fp_in_span(cand, lambda_vectors, p):
            target = cand
            break
    if target is None:
        raise ArithmeticError("no vector outside the image; cokernel claim fails")
    x_coords = exact.fp_solve_left(phi_rows, target, p)
    cert = ObstructionCertificate(
        p=p,
        j=j,
        eps_coords=tuple(eps.coords),
        a_rows=a_lat.rows,
        pj_a_rows=pj_a.rows,
        w_generators=w_generators,
        lambda_vectors=lambda_vectors,
        phi_rows=phi_rows,
        witness_coords=tuple(x_coords),
        target_vector=target,
        degree=n,
    )
    if not cert.verify(ctx):
        raise ArithmeticError("freshly built certificate failed verification")
    return cert
