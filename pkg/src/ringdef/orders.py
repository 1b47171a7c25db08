"""Orders in number fields given by explicit multiplication tables.

An :class:`OrderContext` is a free Z-module of finite rank with a
commutative, associative multiplication table whose first basis element
is the ring identity.  Elements are integer coordinate vectors over that
basis, ideals are full-rank sublattices in Hermite normal form, and all
arithmetic is exact.

Representing orders by structure constants (rather than by defining
polynomials) keeps non-maximal orders, relative quadratic extensions and
composita on one code path, with associativity and automorphism checks
run at construction time.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import exact
from .exact import CapExceeded, NotInvertible

RESIDUE_ENUMERATION_CAP = 10**7
SATURATION_CAP = 10**4


class QuotientTooLarge(RuntimeError):
    """A residue enumeration would exceed the configured cap."""


class OrderContext:
    """An order described by structure constants over an explicit Z-basis.

    ``table[i][j]`` holds the coordinates of ``e_i * e_j``.  Automorphisms
    are stored as row matrices: row ``i`` of an automorphism matrix gives
    the coordinates of the image of ``e_i``, so elements map by a row
    vector-matrix product.  ``conjugation_index`` designates the
    automorphism used for relative norms, ``complex_conjugation_index``
    the one acting as complex conjugation, when meaningful.

    ``base`` optionally links to a smaller order with an embedding matrix
    (rows are the images of the base basis), enabling exact ascent and
    descent between an order and its extensions.
    """

    __slots__ = (
        "table",
        "basis_names",
        "automorphisms",
        "conjugation_index",
        "complex_conjugation_index",
        "description",
        "base",
        "meta",
        "_hash",
    )

    def __init__(
        self,
        table,
        basis_names,
        automorphisms,
        conjugation_index=None,
        complex_conjugation_index=None,
        description="",
        base=None,
        meta=None,
        check=True,
    ):
        self.table = tuple(tuple(tuple(int(c) for c in cell) for cell in row) for row in table)
        self.basis_names = tuple(basis_names)
        self.automorphisms = tuple(tuple(tuple(int(c) for c in r) for r in m) for m in automorphisms)
        self.conjugation_index = conjugation_index
        self.complex_conjugation_index = complex_conjugation_index
        self.description = description
        self.base = base
        self.meta = dict(meta or {})
        self._hash = hash((self.table, self.basis_names, self.automorphisms, self.description))
        if check:
            self._check()

    @property
    def degree(self):
        return len(self.basis_names)

    def _check(self):
        n = self.degree
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table has wrong shape")
        unit = tuple(1 if k == 0 else 0 for k in range(n))
        for i in range(n):
            ei = tuple(1 if k == i else 0 for k in range(n))
            if self.table[0][i] != ei or self.table[i][0] != ei:
                raise ValueError("basis element 0 is not the ring identity")
        for i in range(n):
            for j in range(i):
                if self.table[i][j] != self.table[j][i]:
                    raise ValueError("multiplication table is not commutative")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.mul_coords(self.table[i][j], (0,) * k + (1,) + (0,) * (n - k - 1))
                    right = self.mul_coords((0,) * i + (1,) + (0,) * (n - i - 1), self.table[j][k])
                    if left != right:
                        raise ValueError("multiplication table is not associative")
        for m in self.automorphisms:
            if len(m) != n:
                raise ValueError("automorphism matrix has wrong shape")
            if tuple(m[0]) != unit:
                raise ValueError("automorphism does not fix 1")
            for i in range(n):
                for j in range(n):
                    img_prod = self._apply_rows(self.table[i][j], m)
                    prod_img = self.mul_coords(m[i], m[j])
                    if img_prod != prod_img:
                        raise ValueError("automorphism does not respect multiplication")

    @staticmethod
    def _apply_rows(coords, rows):
        return exact.vec_mat(coords, rows)

    def mul_coords(self, a, b):
        n = self.degree
        out = [0] * n
        for i, ai in enumerate(a):
            if not ai:
                continue
            ti = self.table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, r in enumerate(ti[j]):
                    if r:
                        out[k] += c * r
        return tuple(out)

    def element(self, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.degree:
            raise ValueError("coordinate vector has wrong length")
        return RingElement(self, coords)

    def from_int(self, m):
        return self.element((m,) + (0,) * (self.degree - 1))

    @property
    def one(self):
        return self.from_int(1)

    @property
    def zero(self):
        return self.from_int(0)

    def basis_elements(self):
        n = self.degree
        return [self.element(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]

    def apply_automorphism(self, x, index):
        return self.element(self._apply_rows(x.coords, self.automorphisms[index]))

    def conjugate(self, x):
        if self.conjugation_index is None:
            raise ValueError("order has no designated conjugation automorphism")
        return self.apply_automorphism(x, self.conjugation_index)

    def complex_conjugate(self, x):
        if self.complex_conjugation_index is None:
            raise ValueError("order has no designated complex conjugation")
        return self.apply_automorphism(x, self.complex_conjugation_index)

    def __eq__(self, other):
        return (
            isinstance(other, OrderContext)
            and self.table == other.table
            and self.basis_names == other.basis_names
            and self.automorphisms == other.automorphisms
            and self.description == other.description
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OrderContext({self.description or ', '.join(self.basis_names)})"

    def to_json_dict(self):
        return {
            "degree": self.degree,
            "basis_names": list(self.basis_names),
            "table": [[list(cell) for cell in row] for row in self.table],
            "automorphisms": [[list(r) for r in m] for m in self.automorphisms],
            "conjugation_index": self.conjugation_index,
            "complex_conjugation_index": self.complex_conjugation_index,
            "description": self.description,
            "meta": self.meta,
        }

    @classmethod
    def from_json_dict(cls, data):
        return cls(
            data["table"],
            data["basis_names"],
            data["automorphisms"],
            conjugation_index=data.get("conjugation_index"),
            complex_conjugation_index=data.get("complex_conjugation_index"),
            description=data.get("description", ""),
            meta=data.get("meta"),
        )


class RingElement:
    """Exact element of an order: a coordinate vector over its Z-basis."""

    __slots__ = ("ctx", "coords")

    def __init__(self, ctx, coords):
        self.ctx = ctx
        self.coords = tuple(coords)

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ValueError("elements belong to different orders")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ctx, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ctx, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElement(self.ctx, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ctx, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RingElement(self.ctx, self.ctx.mul_coords(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        rows = multiplication_rows(self)
        sol = exact.solve_int_rows(rows, self.ctx.one.coords)
        if sol is None:
            raise NotInvertible("element has no inverse in the order")
        return self.ctx.element(sol)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coords == self.ctx.from_int(other).coords
        return (
            isinstance(other, RingElement)
            and self.ctx == other.ctx
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.ctx._hash, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        names = self.ctx.basis_names
        terms = []
        for c, name in zip(self.coords, names):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                terms.append(f"{c}*{name}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def multiplication_rows(x):
    """Rows i = coordinates of e_i * x (the regular representation of x)."""
    ctx = x.ctx
    n = ctx.degree
    return [
        ctx.mul_coords(tuple(1 if k == i else 0 for k in range(n)), x.coords)
        for i in range(n)
    ]


def norm_elem(x):
    """Determinant of multiplication by x (the absolute norm)."""
    return exact.det(multiplication_rows(x))


def trace_elem(x):
    rows = multiplication_rows(x)
    return sum(rows[i][i] for i in range(len(rows)))


def relative_norm(x):
    """x * sigma(x) for the designated conjugation of x's order."""
    return x * x.ctx.conjugate(x)


def is_unit(x):
    return abs(norm_elem(x)) == 1


class IdealLattice:
    """Full-rank sublattice of an order in canonical HNF, or the zero ideal.

    The zero ideal is a distinct marker; congruence modulo zero means
    equality.  Equality of nonzero ideals is bit-equality of HNF rows.
    """

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx, rows, check=True):
        self.ctx = ctx
        self.rows = None if rows is None else tuple(tuple(int(c) for c in r) for r in rows)
        if check and self.rows is not None:
            n = ctx.degree
            if len(self.rows) != n:
                raise ValueError("ideal lattice must be full rank")
            if exact.hnf(self.rows) != self.rows:
                raise ValueError("ideal lattice rows are not in HNF")
            for e in ctx.basis_elements():
                for r in self.rows:
                    prod = ctx.mul_coords(e.coords, r)
                    if not exact.lattice_contains(self.rows, prod):
                        raise ValueError("lattice is not closed under ring multiplication")

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, None)

    @classmethod
    def unit(cls, ctx):
        return cls(ctx, exact.mat_identity(ctx.degree), check=False)

    @classmethod
    def from_generators(cls, ctx, gens):
        rows = []
        for g in gens:
            if isinstance(g, int):
                g = ctx.from_int(g)
            for e in ctx.basis_elements():
                rows.append(ctx.mul_coords(g.coords, e.coords))
        h = exact.hnf(rows)
        if not h:
            return cls.zero(ctx)
        if len(h) < ctx.degree:
            raise ValueError("generators span a rank-deficient lattice")
        return cls(ctx, h, check=False)

    @classmethod
    def principal(cls, ctx, g):
        return cls.from_generators(ctx, [g])

    @classmethod
    def from_int(cls, ctx, m):
        return cls.from_generators(ctx, [ctx.from_int(m)])

    @property
    def is_zero(self):
        return self.rows is None

    @property
    def index(self):
        if self.is_zero:
            raise ValueError("zero ideal has infinite index")
        return exact.lattice_index(self.rows)

    def contains(self, x):
        if self.is_zero:
            return not bool(x)
        return exact.lattice_contains(self.rows, x.coords)

    def congruent(self, x, y):
        if self.is_zero:
            return x == y
        return exact.lattice_contains(self.rows, (x - y).coords)

    def reduce(self, x):
        """Canonical coset representative of x."""
        if self.is_zero:
            return x
        return self.ctx.element(exact.reduce_mod_hnf(self.rows, x.coords))

    def scale(self, m):
        if self.is_zero or m == 0:
            return IdealLattice.zero(self.ctx)
        rows = exact.hnf([[m * c for c in r] for r in self.rows])
        return IdealLattice(self.ctx, rows, check=False)

    def elem_mul(self, g):
        if self.is_zero or not bool(g):
            return IdealLattice.zero(self.ctx)
        rows = exact.hnf([self.ctx.mul_coords(g.coords, r) for r in self.rows])
        return IdealLattice(self.ctx, rows, check=False)

    def add(self, other):
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return IdealLattice(self.ctx, exact.lattice_sum(self.rows, other.rows), check=False)

    def intersect(self, other):
        if self.is_zero or other.is_zero:
            return IdealLattice.zero(self.ctx)
        return IdealLattice(self.ctx, exact.lattice_intersect(self.rows, other.rows), check=False)

    def __eq__(self, other):
        return (
            isinstance(other, IdealLattice)
            and self.ctx == other.ctx
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ctx._hash, self.rows))

    def __repr__(self):
        if self.is_zero:
            return "IdealLattice(zero)"
        return f"IdealLattice(rows={self.rows})"

    def to_json(self):
        return {"zero": self.is_zero, "rows": None if self.is_zero else [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, ctx, data):
        if data["zero"]:
            return cls.zero(ctx)
        return cls(ctx, data["rows"])


def congruent_mod_ideal(x, y, m):
    """x == y modulo the ideal lattice m (equality when m is zero)."""
    return m.congruent(x, y)


def colon_lattice(modulus, c):
    """The ideal {x : c*x in modulus} for a nonzero element c."""
    ctx = modulus.ctx
    if modulus.is_zero:
        raise ValueError("colon by the zero ideal is not supported")
    c_rows = multiplication_rows(c)
    stacked = [list(r) for r in c_rows] + [[-v for v in r] for r in modulus.rows]
    # kernel rows are pairs (x, y) with x*C = y*L; the x parts are the
    # coordinates of the colon lattice members themselves
    gens = [k[: ctx.degree] for k in exact.left_kernel(stacked)]
    rows = exact.hnf(gens)
    return IdealLattice(ctx, rows, check=False)


def p_part_of_element(ctx, g, p, cap=SATURATION_CAP):
    """The p-part of the principal ideal (g), by saturation.

    Computed as (g) + (p^e) for the least e at which the chain stabilizes;
    nested lattices are equal iff their indices agree, which is the check
    used here.  No prime-ideal factorization is needed.
    """
    if not bool(g):
        raise ValueError("element must be nonzero")
    base = IdealLattice.principal(ctx, g)
    prev = base.add(IdealLattice.from_int(ctx, p))
    for e in range(2, cap + 2):
        cur = base.add(IdealLattice.from_int(ctx, p**e))
        if cur.index == prev.index:
            return prev
        prev = cur
    raise CapExceeded("cap exceeded")


class QuotientRing:
    """The finite ring O/m for a full-rank ideal lattice m.

    Residues are canonical representatives (coordinates inside the HNF
    box), so equality of residues is plain element equality.  Residue
    enumeration materializes only when the index is at most the cap.
    """

    def __init__(self, ctx, modulus):
        if modulus.is_zero:
            raise ValueError("quotient by the zero ideal is not finite")
        self.ctx = ctx
        self.modulus = modulus
        self.index = modulus.index
        self.one = modulus.reduce(ctx.one)
        self._em = False

    def reduce(self, x):
        if isinstance(x, int):
            x = self.ctx.from_int(x)
        return self.modulus.reduce(x)

    def mul(self, a, b):
        return self.reduce(a * b)

    def add(self, a, b):
        return self.reduce(a + b)

    def pow(self, a, e):
        if e < 0:
            a = self.invert(a)
            e = -e
        result = self.one
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_invertible(self, a):
        if self.index == 1:
            return True
        rows = multiplication_rows(self.reduce(a))
        joint = exact.hnf(list(rows) + list(self.modulus.rows))
        return joint == tuple(tuple(r) for r in exact.mat_identity(self.ctx.degree))

    def invert(self, a):
        if self.index == 1:
            return self.one
        a = self.reduce(a)
        rows = list(multiplication_rows(a)) + list(self.modulus.rows)
        sol = exact.solve_int_rows(rows, self.ctx.one.coords)
        if sol is None:
            raise NotInvertible("not invertible")
        return self.reduce(self.ctx.element(sol[: self.ctx.degree]))

    def exponent_multiple(self):
        if self._em is False:
            self._em = exact.group_exponent_multiple(self.index, self.ctx.degree)
        return self._em

    def elements(self, cap=RESIDUE_ENUMERATION_CAP):
        if self.index > cap:
            raise QuotientTooLarge("quotient too large")
        ranges = [range(self.modulus.rows[i][i]) for i in range(self.ctx.degree)]
        for coords in itertools.product(*ranges):
            yield self.ctx.element(coords)


# ---------------------------------------------------------------------------
# concrete order constructors


@lru_cache(maxsize=None)
def make_rational_order():
    """The rational integers as a degree-1 order context."""
    return OrderContext(
        table=(((1,),),),
        basis_names=("1",),
        automorphisms=(((1,),),),
        conjugation_index=None,
        complex_conjugation_index=0,
        description="Z",
        meta={"kind": "rational"},
    )


def _squarefree(d):
    fac = exact.factor_bounded(abs(d))
    if fac is None:
        raise ValueError("cannot certify squarefreeness within the factoring bound")
    return all(e == 1 for e in fac.values())


def make_quadratic_order(d, maximal=True):
    """The maximal order of Q(sqrt(d)), or the order Z[sqrt(d)].

    With maximal=True and d = 1 mod 4 the basis is {1, w}, w = (1+sqrt(d))/2;
    otherwise the basis is {1, sqrt(d)}.  The automorphism list holds the
    identity and the conjugation sqrt(d) -> -sqrt(d).
    """
    if d in (0, 1):
        raise ValueError("d must differ from 0 and 1")
    if d > 0 and exact.is_square(d):
        raise ValueError("d must not be a perfect square")
    if maximal and not _squarefree(d):
        raise ValueError("maximal order requires squarefree d")
    rational = make_rational_order()
    half_basis = maximal and d % 4 == 1
    if half_basis:
        # w^2 = w + (d-1)/4
        c = (d - 1) // 4
        table = (
            (((1, 0), (0, 1))),
            (((0, 1), (c, 1))),
        )
        name = "w"
        conj = ((1, 0), (1, -1))
        description = f"maximal order of Q(sqrt({d}))"
    else:
        table = (
            (((1, 0), (0, 1))),
            (((0, 1), (d, 0))),
        )
        name = "i" if d == -1 else f"sqrt({d})"
        conj = ((1, 0), (0, -1))
        description = (
            f"maximal order of Q(sqrt({d}))"
            if maximal
            else f"Z[sqrt({d})]"
        )
    identity = ((1, 0), (0, 1))
    ctx = OrderContext(
        table=table,
        basis_names=("1", name),
        automorphisms=(identity, conj),
        conjugation_index=1,
        complex_conjugation_index=1 if d < 0 else 0,
        description=description,
        base=None,
        meta={"kind": "quadratic", "d": d, "maximal": bool(maximal), "half_basis": half_basis},
    )
    ctx.base = (rational, ((1, 0),))
    return ctx


def make_compositum_order(base, d):
    """The rank-4 order O_F[sqrt(d)] over a quadratic order F.

    Basis {1, w, sqrt(d), w*sqrt(d)} where w is the second basis element
    of the base.  Automorphisms: identity, sqrt(d) -> -sqrt(d) fixing F
    (the designated conjugation), the lift of the base conjugation, and
    their product.
    """
    if base.meta.get("kind") != "quadratic":
        raise ValueError("base must be a quadratic order")
    if d in (0, 1) or (d > 0 and exact.is_square(d)):
        raise ValueError("d must not be a perfect square")
    t = base.table[1][1]  # w^2 = t[0] + t[1]*w
    n = 4

    def pair_mul(p, q):
        # elements as (a0, a1, b0, b1) = (a0 + a1 w) + (b0 + b1 w) sqrt(d)
        a = (p[0], p[1])
        b = (p[2], p[3])
        c = (q[0], q[1])
        e = (q[2], q[3])
        ac = base.mul_coords(a, c)
        be = base.mul_coords(b, e)
        ae = base.mul_coords(a, e)
        bc = base.mul_coords(b, c)
        first = tuple(x + d * y for x, y in zip(ac, be))
        second = tuple(x + y for x, y in zip(ae, bc))
        return first + second

    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    table = tuple(tuple(pair_mul(basis[i], basis[j]) for j in range(n)) for i in range(n))
    base_sym = base.basis_names[1]
    names = ("1", base_sym, f"sqrt({d})", f"{base_sym}*sqrt({d})")
    identity = tuple(basis)
    rel_conj = (basis[0], basis[1], tuple(-c for c in basis[2]), tuple(-c for c in basis[3]))
    sigma = base.automorphisms[1]
    base_conj_lift = (
        basis[0],
        (sigma[1][0], sigma[1][1], 0, 0),
        basis[2],
        (0, 0, sigma[1][0], sigma[1][1]),
    )
    both = tuple(
        tuple(-c for c in row) if i >= 2 else row for i, row in enumerate(base_conj_lift)
    )
    base_d = base.meta["d"]
    if base_d < 0 and d > 0:
        cc = 2
    elif base_d < 0 and d < 0:
        cc = 3
    elif base_d > 0 and d < 0:
        cc = 1
    else:
        cc = 0
    ctx = OrderContext(
        table=table,
        basis_names=names,
        automorphisms=(identity, rel_conj, base_conj_lift, both),
        conjugation_index=1,
        complex_conjugation_index=cc,
        description=f"{base.description} adjoined sqrt({d})",
        meta={"kind": "compositum", "base_d": base_d, "d": d},
    )
    ctx.base = (base, ((1, 0, 0, 0), (0, 1, 0, 0)))
    return ctx


def make_relative_quadratic_extension(base, a, b):
    """The order base[r] with r a root of X^2 + a X + b, a and b in base.

    The designated conjugation is r -> -a - r, which fixes the base, so
    relative norms of extension elements land in the base order.
    """
    if isinstance(a, int):
        a = base.from_int(a)
    if isinstance(b, int):
        b = base.from_int(b)
    nb = base.degree
    n = 2 * nb

    def pair_mul(p, q):
        p0, p1 = p[:nb], p[nb:]
        q0, q1 = q[:nb], q[nb:]
        pq = base.mul_coords(p1, q1)  # coefficient of r^2
        first = tuple(
            x - y
            for x, y in zip(base.mul_coords(p0, q0), base.mul_coords(pq, b.coords))
        )
        cross = tuple(
            x + y for x, y in zip(base.mul_coords(p0, q1), base.mul_coords(p1, q0))
        )
        second = tuple(x - y for x, y in zip(cross, base.mul_coords(pq, a.coords)))
        return first + second

    basis = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    table = tuple(tuple(pair_mul(basis[i], basis[j]) for j in range(n)) for i in range(n))
    names = tuple(base.basis_names) + tuple(
        "r" if nm == "1" else f"{nm}*r" for nm in base.basis_names
    )
    identity = tuple(basis)
    conj_rows = []
    for i in range(nb):
        conj_rows.append(basis[i])
    for i in range(nb):
        ei = tuple(1 if k == i else 0 for k in range(nb))
        ma = base.mul_coords(ei, a.coords)
        conj_rows.append(tuple(-c for c in ma) + tuple(-c for c in ei))
    ctx = OrderContext(
        table=table,
        basis_names=names,
        automorphisms=(identity, tuple(conj_rows)),
        conjugation_index=1,
        complex_conjugation_index=None,
        description=f"{base.description} adjoined a root of X^2 + ({a!r})X + ({b!r})",
        meta={"kind": "relative_quadratic"},
    )
    embed_rows = tuple(tuple(basis[i]) for i in range(nb))
    ctx.base = (base, embed_rows)
    return ctx


def embed(x, target):
    """Map an element into an extension through the recorded base chain."""
    if x.ctx == target:
        return x
    if target.base is None:
        raise ValueError("no embedding into the target order")
    parent, rows = target.base
    if x.ctx != parent:
        x = embed(x, parent)
    return target.element(exact.vec_mat(x.coords, rows))


def descend(x, base_ctx):
    """Express an extension element in a base order; error if it is not there."""
    ctx = x.ctx
    coords = x.coords
    while ctx != base_ctx:
        if ctx.base is None:
            raise ValueError("element does not lie in the requested base order")
        parent, rows = ctx.base
        sol = exact.solve_int_rows(rows, coords)
        if sol is None:
            raise ValueError("element does not lie in the requested base order")
        ctx, coords = parent, sol
    return base_ctx.element(coords)


def extend_ideal(ideal, target):
    """The ideal generated in an extension by a base ideal's lattice."""
    if ideal.is_zero:
        return IdealLattice.zero(target)
    gens = [embed(ideal.ctx.element(r), target) for r in ideal.rows]
    return IdealLattice.from_generators(target, gens)
