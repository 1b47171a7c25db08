"""Congruence-defined subrings of orders.

For units eps and delta of an order O, the solutions x of

    delta - 1 = (eps - 1) x   (mod (eps - 1)^2)

form either the empty set or a coset of the fixed ideal
((eps-1)^2 : (eps-1)).  Intersecting, over every eps in a group of
units, the union over delta of these classes yields a subring of O; for
orders with finitely many units that intersection is computed exactly
here, and for infinite unit groups membership is probed under explicit
exponent bounds with three-valued verdicts.

Congruence modulo the zero ideal means equality, so the degenerate case
eps = 1 is handled uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import exact, orders, units
from .orders import IdealLattice, QuotientRing, RingElement

REFINEMENT_ENUMERATION_CAP = 10**5


@dataclass
class Verdict:
    """Three-valued outcome of a bounded search.

    TRUE carries a replayable witness payload and FALSE a replayable
    refutation certificate.  UNKNOWN records which way the bounded
    evidence leans: "positive" when every swept case was satisfied and
    only range completeness is missing, "negative" when some case had no
    witness within the bounds.
    """

    status: str
    witness: dict | None = None
    refutation: dict | None = None
    evidence: str | None = None
    bounds: dict = field(default_factory=dict)

    @classmethod
    def true(cls, witness=None, bounds=None):
        return cls("TRUE", witness=witness or {}, bounds=bounds or {})

    @classmethod
    def false(cls, refutation=None, bounds=None):
        return cls("FALSE", refutation=refutation or {}, bounds=bounds or {})

    @classmethod
    def unknown(cls, evidence, witness=None, refutation=None, bounds=None):
        return cls(
            "UNKNOWN",
            witness=witness,
            refutation=refutation,
            evidence=evidence,
            bounds=bounds or {},
        )

    @property
    def holds(self):
        return self.status == "TRUE"

    @property
    def leans_positive(self):
        """No counterexample was observed at the swept bounds."""
        return self.status == "TRUE" or (
            self.status == "UNKNOWN" and self.evidence == "positive"
        )

    def to_json(self):
        return {
            "status": self.status,
            "witness": self.witness,
            "refutation": self.refutation,
            "evidence": self.evidence,
            "bounds": self.bounds,
        }


class CongruenceClass:
    """Empty, or a coset (residue + modulus) with a canonical representative.

    The residue is reduced into the HNF box of the modulus, so equality
    of classes is equality of the pair.  The intersection of two classes
    is again a class (possibly empty), computed by solving the difference
    of representatives over the sum of the two lattices.
    """

    __slots__ = ("ctx", "residue", "modulus")

    def __init__(self, ctx, residue, modulus):
        self.ctx = ctx
        self.residue = residue
        self.modulus = modulus

    @classmethod
    def empty(cls, ctx):
        return cls(ctx, None, None)

    @classmethod
    def of(cls, residue, modulus):
        if modulus.is_zero:
            raise ValueError("classes with zero modulus are not supported")
        return cls(residue.ctx, modulus.reduce(residue), modulus)

    @classmethod
    def whole(cls, ctx):
        return cls.of(ctx.zero, IdealLattice.unit(ctx))

    @property
    def is_empty(self):
        return self.residue is None

    @property
    def is_whole(self):
        return not self.is_empty and self.modulus == IdealLattice.unit(self.ctx)

    def contains(self, x):
        return not self.is_empty and self.modulus.congruent(x, self.residue)

    def intersect(self, other):
        if self.is_empty or other.is_empty:
            return CongruenceClass.empty(self.ctx)
        diff = other.residue - self.residue
        stacked = list(self.modulus.rows) + list(other.modulus.rows)
        sol = exact.solve_int_rows(stacked, diff.coords)
        if sol is None:
            return CongruenceClass.empty(self.ctx)
        shift = exact.vec_mat(sol[: len(self.modulus.rows)], self.modulus.rows)
        rep = self.residue + self.ctx.element(shift)
        return CongruenceClass.of(rep, self.modulus.intersect(other.modulus))

    def __eq__(self, other):
        if not isinstance(other, CongruenceClass):
            return NotImplemented
        if self.is_empty or other.is_empty:
            return self.is_empty and other.is_empty
        return self.residue == other.residue and self.modulus == other.modulus

    def __hash__(self):
        if self.is_empty:
            return hash(("empty", self.ctx._hash))
        return hash((self.residue, self.modulus))

    def __repr__(self):
        if self.is_empty:
            return "CongruenceClass(empty)"
        return f"CongruenceClass({self.residue!r} mod {self.modulus.rows})"

    def to_json(self):
        if self.is_empty:
            return {"empty": True}
        return {
            "empty": False,
            "residue": list(self.residue.coords),
            "modulus": [list(r) for r in self.modulus.rows],
        }


class SubringDescription:
    """An additive sublattice of an order that is closed under multiplication.

    Not necessarily an ideal: the prototypical value is Z + 2*O.  Closure
    and the presence of 1 are verified on lattice basis pairs at
    construction.
    """

    __slots__ = ("ctx", "rows", "provenance")

    def __init__(self, ctx, rows, provenance=None, check=True):
        self.ctx = ctx
        self.rows = tuple(tuple(int(c) for c in r) for r in rows)
        self.provenance = provenance or {}
        if check:
            if len(self.rows) != ctx.degree or exact.hnf(self.rows) != self.rows:
                raise ValueError("subring lattice must be a full-rank HNF")
            if not exact.lattice_contains(self.rows, ctx.one.coords):
                raise ValueError("subring must contain 1")
            for r in self.rows:
                for s in self.rows:
                    prod = ctx.mul_coords(r, s)
                    if not exact.lattice_contains(self.rows, prod):
                        raise ValueError("lattice is not closed under multiplication")

    def contains(self, x):
        return exact.lattice_contains(self.rows, x.coords)

    @property
    def index(self):
        return exact.lattice_index(self.rows)

    def basis_elements(self):
        return [self.ctx.element(r) for r in self.rows]

    def __eq__(self, other):
        return (
            isinstance(other, SubringDescription)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"SubringDescription(rows={self.rows})"

    def to_json(self):
        return {"rows": [list(r) for r in self.rows], "index": self.index}


def solution_class(eps, delta):
    """All x with delta - 1 = (eps - 1) x mod (eps - 1)^2, as a class.

    For eps = 1 the modulus is the zero ideal, so the class is the whole
    ring when delta = 1 and empty otherwise.  For eps != 1 the class is
    found by one integer linear solve; its modulus is the colon ideal
    ((eps-1)^2 : (eps-1)), independent of delta.
    """
    ctx = eps.ctx
    c = eps - 1
    t = delta - 1
    if not c:
        return CongruenceClass.whole(ctx) if not t else CongruenceClass.empty(ctx)
    square = IdealLattice.principal(ctx, c * c)
    c_rows = orders.multiplication_rows(c)
    stacked = list(c_rows) + list(square.rows)
    sol = exact.solve_int_rows(stacked, t.coords)
    if sol is None:
        return CongruenceClass.empty(ctx)
    x0 = ctx.element(sol[: ctx.degree])
    return CongruenceClass.of(x0, orders.colon_lattice(square, c))


def _union_of_classes(eps, unit_values):
    seen = []
    for delta in unit_values:
        cls = solution_class(eps, delta)
        if not cls.is_empty and all(cls != other for _, other in seen):
            seen.append((delta, cls))
    return seen


def congruence_ring_finite_units(ctx, cap=REFINEMENT_ENUMERATION_CAP):
    """Exact intersection over all units eps of the union over delta of
    solution classes, for orders whose unit group is finite.

    Unions are held as disjoint class lists and intersected by
    distributing pairwise class intersections.  The surviving classes
    share one modulus; their residues are checked to form a subgroup of
    the quotient, and the subring is returned as a lattice together with
    a replayable trace.
    """
    desc = units.unit_group(ctx)
    if not desc.is_exhaustive:
        raise ValueError("exact computation needs a finite (exhaustive) unit group")
    values = [w.evaluate() for w in units.enumerate_units(desc, 0)]
    region = [CongruenceClass.whole(ctx)]
    trace = []
    for eps in values:
        union = _union_of_classes(eps, values)
        trace.append(
            {
                "eps": list(eps.coords),
                "classes": [
                    {"delta": list(delta.coords), **cls.to_json()}
                    for delta, cls in union
                ],
            }
        )
        region = [
            meet
            for cur in region
            for _, cls in union
            if not (meet := cur.intersect(cls)).is_empty
        ]
        if not region:
            raise ArithmeticError("empty intersection; unit data is inconsistent")
    modulus = region[0].modulus
    if any(cls.modulus != modulus for cls in region):
        raise ArithmeticError("intersection produced mismatched moduli")
    if modulus.index > cap:
        raise orders.QuotientTooLarge("quotient too large")
    residues = sorted({cls.residue.coords for cls in region})
    residue_set = set(residues)
    zero = ctx.zero.coords
    if zero not in residue_set:
        raise ArithmeticError("0 is missing from the computed ring")
    for r in residues:
        for s in residues:
            diff = modulus.reduce(ctx.element(r) - ctx.element(s))
            if diff.coords not in residue_set:
                raise ArithmeticError("computed residues are not a subgroup")
    rows = exact.hnf(list(modulus.rows) + [list(r) for r in residues])
    if exact.lattice_index(rows) * len(residues) != modulus.index:
        raise ArithmeticError("index bookkeeping failed")
    provenance = {
        "modulus": [list(r) for r in modulus.rows],
        "residues": [list(r) for r in residues],
        "per_eps": trace,
    }
    return SubringDescription(ctx, rows, provenance)


def _delta_search(q, target, delta_words, gen_residues):
    for word in delta_words:
        res = q.one
        for g, e in zip(gen_residues, word.exponents):
            if e:
                res = q.mul(res, q.pow(g, e))
        if res == target:
            return word
    return None


def membership_probe(x, desc, eps_bound, delta_bound, obstructions=()):
    """Bounded test of: for all eps in the group, some delta satisfies
    delta - 1 = (eps - 1) x mod (eps - 1)^2.

    Verdicts: TRUE with a witness map when the unit sweep is exhaustive;
    FALSE only with a completeness certificate (exhaustive units, or a
    matching linear-algebra obstruction certificate passed by the
    caller); otherwise UNKNOWN, recording whether every swept eps found a
    witness.
    """
    if eps_bound < 0 or delta_bound < 0:
        raise ValueError("bounds must be nonnegative")
    ctx = desc.ctx
    bounds = {"eps_bound": eps_bound, "delta_bound": delta_bound}
    for cert in obstructions:
        hit = cert.excludes(x)
        if hit:
            return Verdict.false(
                refutation={
                    "kind": "obstruction-certificate",
                    "eps": list(cert.eps_coords),
                    "scale": hit,
                    "certificate": cert.to_json(),
                },
                bounds=bounds,
            )
    eps_words = units.enumerate_units(desc, eps_bound)
    delta_words = list(units.enumerate_units(desc, delta_bound))
    witnesses = []
    failures = []
    for e_word in eps_words:
        eps = e_word.evaluate()
        c = eps - 1
        if not c:
            delta_word = next((w for w in delta_words if w.evaluate() == 1), None)
            if delta_word is None:
                failures.append(e_word)
            else:
                witnesses.append((e_word, delta_word))
            continue
        modulus = IdealLattice.principal(ctx, c * c)
        q = QuotientRing(ctx, modulus)
        target = q.reduce(c * x + 1)
        gen_residues = [q.reduce(g) for g in desc.generators()]
        found = _delta_search(q, target, delta_words, gen_residues)
        if found is None:
            failures.append(e_word)
        else:
            witnesses.append((e_word, found))
    witness_payload = {
        "map": [
            {"eps": list(e.exponents), "delta": list(d.exponents)}
            for e, d in witnesses
        ]
    }
    if failures:
        refutation = {
            "kind": "enumerated-refutation",
            "failing_eps": [list(w.exponents) for w in failures],
            "delta_words_checked": len(delta_words),
        }
        if desc.is_exhaustive:
            return Verdict.false(refutation=refutation, bounds=bounds)
        return Verdict.unknown(
            "negative", refutation=refutation, witness=witness_payload, bounds=bounds
        )
    if desc.is_exhaustive:
        return Verdict.true(witness=witness_payload, bounds=bounds)
    return Verdict.unknown("positive", witness=witness_payload, bounds=bounds)


def combine_witnesses(eps, pairs):
    """Multiply congruence witnesses: from delta_i - 1 = (eps-1) x_i the
    product of the delta_i pairs with the sum of the x_i.

    Every input pair is checked against the hypothesis, and the combined
    congruence is verified before returning (prod delta_i, sum x_i).
    """
    ctx = eps.ctx
    c = eps - 1
    modulus = (
        IdealLattice.zero(ctx) if not c else IdealLattice.principal(ctx, c * c)
    )
    for x_i, delta_i in pairs:
        if not modulus.congruent(delta_i - 1, c * x_i):
            raise ValueError("pair violates the congruence hypothesis")
    prod = ctx.one
    total = ctx.zero
    for x_i, delta_i in pairs:
        prod = prod * delta_i
        total = total + x_i
    if not modulus.congruent(prod - 1, c * total):
        raise ArithmeticError("combined congruence failed")
    return prod, total


def norm_descend(eps, x, delta, ext_ctx):
    """Push a congruence witness down a relative quadratic extension.

    Given (eps-1) x = delta - 1 mod (eps-1)^2 in the extension (checked),
    with eps and x in the base, the relative norm delta * sigma(delta)
    satisfies (eps-1) * [L:K] * x = N(delta) - 1 mod (eps-1)^2 in the
    base order.  Returns a record with both sides and the verified
    congruences.
    """
    base_ctx = eps.ctx
    if ext_ctx.base is None or ext_ctx.base[0] != base_ctx:
        raise ValueError("extension does not sit over the base of eps")
    if x.ctx != base_ctx:
        raise ValueError("x must lie in the base order")
    eps_l = orders.embed(eps, ext_ctx)
    x_l = orders.embed(x, ext_ctx)
    c_l = eps_l - 1
    modulus_l = (
        IdealLattice.zero(ext_ctx)
        if not c_l
        else IdealLattice.principal(ext_ctx, c_l * c_l)
    )
    if not modulus_l.congruent(delta - 1, c_l * x_l):
        raise ValueError("hypothesis congruence fails in the extension")
    rel_degree = ext_ctx.degree // base_ctx.degree
    norm = orders.descend(orders.relative_norm(delta), base_ctx)
    c = eps - 1
    modulus = IdealLattice.zero(base_ctx) if not c else IdealLattice.principal(base_ctx, c * c)
    lhs = c * rel_degree * x
    rhs = norm - 1
    if not modulus.congruent(lhs, rhs):
        raise ArithmeticError("descended congruence failed")
    return {
        "norm": norm,
        "lhs": lhs,
        "rhs": rhs,
        "relative_degree": rel_degree,
        "modulus": modulus.to_json(),
    }


def ratio_witness_probe(x, subring, height_bound):
    """Search for y != 0 in the subring with x*y also in the subring.

    Success witnesses that x is a ratio of subring elements (so x lies in
    the integral closure of the subring in its fraction field).  The
    search runs over coefficient vectors of the subring basis with
    entries bounded by the height bound; failure is UNKNOWN, never FALSE.
    """
    if height_bound < 0:
        raise ValueError("height bound must be nonnegative")
    ctx = subring.ctx
    n = ctx.degree
    span = sorted(range(-height_bound, height_bound + 1), key=lambda e: (abs(e), e))
    import itertools

    vectors = sorted(
        itertools.product(span, repeat=n),
        key=lambda v: (max((abs(c) for c in v), default=0), v),
    )
    for coeffs in vectors:
        if not any(coeffs):
            continue
        y = ctx.element(exact.vec_mat(coeffs, subring.rows))
        z = x * y
        if subring.contains(z):
            return Verdict.true(
                witness={"y": list(y.coords), "z": list(z.coords), "coeffs": list(coeffs)},
                bounds={"height_bound": height_bound},
            )
    return Verdict.unknown("negative", bounds={"height_bound": height_bound})
