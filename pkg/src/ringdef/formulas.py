"""A small first-order language over the ring signature, with congruence
and unit atoms, and a bounded three-valued evaluator.

Grammar (EBNF):

    formula := quant* body
    quant   := ("forall" | "exists") ident ":" sort "."
    sort    := "Unit" [ "(" int ")" ] | "Elem" [ "(" int ")" ]
    body    := disj
    disj    := conj ("or" conj)*
    conj    := atom ("and" atom)*
    atom    := "not" atom | "(" body ")"
             | term ("==" | "!=") term | term "==" term "mod" term
             | "unit" "(" term ")"
    term    := term ("+" | "-") mul | mul
    mul     := mul "*" pow | pow
    pow     := prim ("^" int)?
    prim    := int | ident | "(" term ")"

Sort bounds may be written inline, e.g. Unit(5); when omitted they come
from the evaluation environment.  Quantifiers range over finite sweeps:
unit words up to an exponent bound (the complete group when the unit
group is finite), or elements with coordinates up to a height bound.
A universal sweep over an incomplete range can return at most a
positive-leaning UNKNOWN; an existential TRUE always carries a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import orders, units
from .orders import IdealLattice
from .rings import Verdict


class FormulaError(ValueError):
    """Syntax, scoping, or sort error, with source position."""

    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*"
    left: object
    right: object


@dataclass(frozen=True)
class PowOp:
    base: object
    exponent: int


@dataclass(frozen=True)
class Compare:
    op: str  # "==" or "!="
    left: object
    right: object


@dataclass(frozen=True)
class CongMod:
    left: object
    right: object
    modulus: object


@dataclass(frozen=True)
class IsUnit:
    term: object


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class Conn:
    op: str  # "and" or "or"
    parts: tuple


@dataclass(frozen=True)
class Quant:
    kind: str  # "forall" or "exists"
    var: str
    sort: str  # "Unit" or "Elem"
    bound: int | None
    body: object


# ---------------------------------------------------------------------------
# lexer


_SYMBOLS = ("==", "!=", "(", ")", "+", "-", "*", "^", ":", ".")
_KEYWORDS = {"forall", "exists", "and", "or", "not", "mod", "unit", "Unit", "Elem"}


def _lex(src):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(src):
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        matched = None
        for sym in _SYMBOLS:
            if src.startswith(sym, i):
                matched = sym
                break
        if matched:
            tokens.append((matched, matched, line, col))
            i += len(matched)
            col += len(matched)
            continue
        if ch.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j]), line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            kind = word if word in _KEYWORDS else "ident"
            tokens.append((kind, word, line, col))
            col += j - i
            i = j
            continue
        raise FormulaError(f"unexpected character {ch!r}", line, col)
    tokens.append(("eof", None, line, col))
    return tokens


# ---------------------------------------------------------------------------
# parser (recursive descent with backtracking at the atom level)


class _Parser:
    def __init__(self, tokens, free_vars=None):
        self.tokens = tokens
        self.pos = 0
        self.free_vars = None if free_vars is None else set(free_vars)
        self.scope = []

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise FormulaError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return tok

    def fail(self, message):
        tok = self.peek()
        raise FormulaError(message, tok[2], tok[3])

    def parse_formula(self):
        quants = []
        while self.peek()[0] in ("forall", "exists"):
            kind = self.next()[0]
            name_tok = self.expect("ident")
            name = name_tok[1]
            if name in self.scope or (self.free_vars and name in self.free_vars):
                raise FormulaError(
                    f"variable {name!r} bound more than once", name_tok[2], name_tok[3]
                )
            self.expect(":")
            sort_tok = self.next()
            if sort_tok[0] not in ("Unit", "Elem"):
                raise FormulaError("sort must be Unit or Elem", sort_tok[2], sort_tok[3])
            bound = None
            if self.peek()[0] == "(":
                self.next()
                bound_tok = self.expect("int")
                bound = bound_tok[1]
                if bound < 0:
                    raise FormulaError("sort bound must be nonnegative", bound_tok[2], bound_tok[3])
                self.expect(")")
            self.expect(".")
            quants.append((kind, name, sort_tok[0], bound))
            self.scope.append(name)
        body = self.parse_body()
        self.expect("eof")
        node = body
        for kind, name, sort, bound in reversed(quants):
            node = Quant(kind, name, sort, bound, node)
        return node

    def parse_body(self):
        parts = [self.parse_conj()]
        while self.peek()[0] == "or":
            self.next()
            parts.append(self.parse_conj())
        return parts[0] if len(parts) == 1 else Conn("or", tuple(parts))

    def parse_conj(self):
        parts = [self.parse_atom()]
        while self.peek()[0] == "and":
            self.next()
            parts.append(self.parse_atom())
        return parts[0] if len(parts) == 1 else Conn("and", tuple(parts))

    def parse_atom(self):
        tok = self.peek()
        if tok[0] == "not":
            self.next()
            return Not(self.parse_atom())
        if tok[0] == "unit":
            self.next()
            self.expect("(")
            term = self.parse_term()
            self.expect(")")
            return IsUnit(term)
        if tok[0] == "(":
            # could be a parenthesized body or a parenthesized term
            saved = self.pos
            try:
                return self.parse_relation()
            except FormulaError:
                self.pos = saved
            self.next()
            body = self.parse_body()
            self.expect(")")
            return body
        return self.parse_relation()

    def parse_relation(self):
        left = self.parse_term()
        op_tok = self.next()
        if op_tok[0] == "!=":
            return Compare("!=", left, self.parse_term())
        if op_tok[0] != "==":
            raise FormulaError("expected == or !=", op_tok[2], op_tok[3])
        right = self.parse_term()
        if self.peek()[0] == "mod":
            self.next()
            modulus = self.parse_term()
            return CongMod(left, right, modulus)
        return Compare("==", left, right)

    def parse_term(self):
        node = self.parse_mul()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            node = BinOp(op, node, self.parse_mul())
        return node

    def parse_mul(self):
        node = self.parse_pow()
        while self.peek()[0] == "*":
            self.next()
            node = BinOp("*", node, self.parse_pow())
        return node

    def parse_pow(self):
        node = self.parse_prim()
        if self.peek()[0] == "^":
            self.next()
            exp_tok = self.expect("int")
            if exp_tok[1] < 0:
                raise FormulaError("exponent must be nonnegative", exp_tok[2], exp_tok[3])
            node = PowOp(node, exp_tok[1])
        return node

    def parse_prim(self):
        tok = self.next()
        if tok[0] == "int":
            return IntLit(tok[1])
        if tok[0] == "ident":
            if tok[1] not in self.scope and self.free_vars is not None and tok[1] not in self.free_vars:
                raise FormulaError(f"unbound variable {tok[1]!r}", tok[2], tok[3])
            return Var(tok[1])
        if tok[0] == "(":
            term = self.parse_term()
            self.expect(")")
            return term
        raise FormulaError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def parse(src, free_vars=None):
    """Parse a formula; diagnostics carry line and column.

    With ``free_vars`` given, any identifier outside that set and the
    quantified scope is rejected as unbound at parse time.
    """
    return _Parser(_lex(src), free_vars).parse_formula()


def free_variables(node, bound=frozenset()):
    if isinstance(node, Var):
        return set() if node.name in bound else {node.name}
    if isinstance(node, IntLit):
        return set()
    if isinstance(node, BinOp):
        return free_variables(node.left, bound) | free_variables(node.right, bound)
    if isinstance(node, PowOp):
        return free_variables(node.base, bound)
    if isinstance(node, Compare):
        return free_variables(node.left, bound) | free_variables(node.right, bound)
    if isinstance(node, CongMod):
        return (
            free_variables(node.left, bound)
            | free_variables(node.right, bound)
            | free_variables(node.modulus, bound)
        )
    if isinstance(node, IsUnit):
        return free_variables(node.term, bound)
    if isinstance(node, Not):
        return free_variables(node.body, bound)
    if isinstance(node, Conn):
        out = set()
        for p in node.parts:
            out |= free_variables(p, bound)
        return out
    if isinstance(node, Quant):
        return free_variables(node.body, bound | {node.var})
    raise TypeError(f"unknown node {node!r}")


def print_formula(node):
    """Canonical text rendering; parse(print_formula(ast)) == ast."""
    return _print_node(node)


def _print_term(node, parent_prec=0):
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, PowOp):
        return f"{_print_term(node.base, 3)}^{node.exponent}"
    if isinstance(node, BinOp):
        prec = 1 if node.op in ("+", "-") else 2
        left = _print_term(node.left, prec)
        right = _print_term(node.right, prec + 1)
        out = f"{left} {node.op} {right}"
        if prec < parent_prec:
            out = f"({out})"
        return out
    raise TypeError(f"not a term: {node!r}")


def _print_node(node, parent=None):
    if isinstance(node, Quant):
        bound = "" if node.bound is None else f"({node.bound})"
        return f"{node.kind} {node.var}:{node.sort}{bound}. {_print_node(node.body)}"
    if isinstance(node, Conn):
        sep = f" {node.op} "
        parts = []
        for p in node.parts:
            text = _print_node(p, parent=node.op)
            parts.append(text)
        out = sep.join(parts)
        if parent is not None:
            out = f"({out})"
        return out
    if isinstance(node, Not):
        return f"not {_print_node(node.body, parent='not')}"
    if isinstance(node, Compare):
        return f"{_print_term(node.left)} {node.op} {_print_term(node.right)}"
    if isinstance(node, CongMod):
        return (
            f"{_print_term(node.left)} == {_print_term(node.right)}"
            f" mod {_print_term(node.modulus, 3)}"
        )
    if isinstance(node, IsUnit):
        return f"unit({_print_term(node.term)})"
    raise TypeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class EvalEnvironment:
    """Context, unit group, default sort bounds, and a variable assignment."""

    ctx: orders.OrderContext
    desc: units.UnitGroupDescription
    unit_bound: int = 3
    elem_bound: int = 2
    assignment: dict = field(default_factory=dict)

    def with_assignment(self, **kwargs):
        assign = dict(self.assignment)
        for k, v in kwargs.items():
            assign[k] = self.ctx.from_int(v) if isinstance(v, int) else v
        return EvalEnvironment(self.ctx, self.desc, self.unit_bound, self.elem_bound, assign)


class _Result:
    """Internal three-valued result: value in {True, False, None} plus a
    witness-gap flag (some existential sweep found nothing at its bound)
    and collected witness assignments for TRUE paths."""

    __slots__ = ("value", "gap", "witness")

    def __init__(self, value, gap=False, witness=None):
        self.value = value
        self.gap = gap
        self.witness = witness or {}


def _eval_term(node, ctx, assignment):
    if isinstance(node, IntLit):
        return ctx.from_int(node.value)
    if isinstance(node, Var):
        try:
            return assignment[node.name]
        except KeyError:
            raise ValueError(f"no value assigned to variable {node.name!r}") from None
    if isinstance(node, BinOp):
        left = _eval_term(node.left, ctx, assignment)
        right = _eval_term(node.right, ctx, assignment)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    if isinstance(node, PowOp):
        return _eval_term(node.base, ctx, assignment) ** node.exponent
    raise TypeError(f"not a term: {node!r}")


def _sort_range(sort, bound, env):
    if sort == "Unit":
        sweep = units.enumerate_units(env.desc, bound if bound is not None else env.unit_bound)
        return [w.evaluate() for w in sweep], sweep.exhaustive
    height = bound if bound is not None else env.elem_bound
    span = sorted(range(-height, height + 1), key=lambda e: (abs(e), e))
    values = [
        env.ctx.element(coords)
        for coords in sorted(
            itertools.product(span, repeat=env.ctx.degree),
            key=lambda v: (max((abs(c) for c in v), default=0), v),
        )
    ]
    return values, False


def _eval_node(node, env, assignment):
    if isinstance(node, Quant):
        values, complete = _sort_range(node.sort, node.bound, env)
        gap = False
        branch_results = []
        for value in values:
            assignment[node.var] = value
            res = _eval_node(node.body, env, assignment)
            del assignment[node.var]
            if node.kind == "exists":
                if res.value is True:
                    witness = dict(res.witness)
                    witness[node.var] = value
                    return _Result(True, witness=witness)
            else:
                if res.value is False:
                    return _Result(False, witness={node.var: value})
            branch_results.append(res)
            gap = gap or res.gap
        if node.kind == "exists":
            if complete and all(r.value is False for r in branch_results):
                return _Result(False)
            return _Result(None, gap=True)
        if complete and all(r.value is True for r in branch_results):
            return _Result(True)
        return _Result(None, gap=gap)
    if isinstance(node, Conn):
        results = [_eval_node(p, env, assignment) for p in node.parts]
        gap = any(r.gap for r in results)
        if node.op == "and":
            if any(r.value is False for r in results):
                return _Result(False, gap=gap)
            if all(r.value is True for r in results):
                witness = {}
                for r in results:
                    witness.update(r.witness)
                return _Result(True, gap=gap, witness=witness)
            return _Result(None, gap=gap)
        if any(r.value is True for r in results):
            hit = next(r for r in results if r.value is True)
            return _Result(True, witness=dict(hit.witness))
        if all(r.value is False for r in results):
            return _Result(False, gap=gap)
        return _Result(None, gap=gap)
    if isinstance(node, Not):
        res = _eval_node(node.body, env, assignment)
        value = None if res.value is None else (not res.value)
        return _Result(value, gap=res.gap)
    ctx = env.ctx
    if isinstance(node, Compare):
        left = _eval_term(node.left, ctx, assignment)
        right = _eval_term(node.right, ctx, assignment)
        equal = left == right
        return _Result(equal if node.op == "==" else not equal)
    if isinstance(node, CongMod):
        left = _eval_term(node.left, ctx, assignment)
        right = _eval_term(node.right, ctx, assignment)
        modulus_elem = _eval_term(node.modulus, ctx, assignment)
        if not modulus_elem:
            return _Result(left == right)
        modulus = IdealLattice.principal(ctx, modulus_elem)
        return _Result(modulus.congruent(left, right))
    if isinstance(node, IsUnit):
        value = _eval_term(node.term, ctx, assignment)
        return _Result(abs(orders.norm_elem(value)) == 1)
    raise TypeError(f"unknown node {node!r}")


def eval_bounded(formula, env):
    """Evaluate a closed-under-assignment formula under bounded sweeps.

    Returns a Verdict: TRUE with the witness assignment from the
    outermost satisfied existentials, FALSE with a counterexample, or
    UNKNOWN whose evidence records whether any existential sweep came up
    empty within its bound.
    """
    missing = free_variables(formula) - set(env.assignment)
    if missing:
        raise ValueError(f"assignment missing for variables: {sorted(missing)}")
    assignment = dict(env.assignment)
    res = _eval_node(formula, env, assignment)
    bounds = {"unit_bound": env.unit_bound, "elem_bound": env.elem_bound}
    if res.value is True:
        witness = {k: list(v.coords) for k, v in res.witness.items()}
        return Verdict.true(witness={"assignment": witness}, bounds=bounds)
    if res.value is False:
        counter = {k: list(v.coords) for k, v in res.witness.items()}
        return Verdict.false(refutation={"counterexample": counter}, bounds=bounds)
    return Verdict.unknown("negative" if res.gap else "positive", bounds=bounds)


# ---------------------------------------------------------------------------
# built-in formulas

# Membership in the congruence-defined ring, quantifying over unit words.
RK_MEMBER_SRC = "forall e:Unit. exists d:Unit. d - 1 == (e - 1)*x mod (e - 1)^2"

# The same condition written with ring quantifiers only: unit-hood of the
# universally quantified e is expressed through an inverse b, and the
# witness d through an inverse c.  Prenex form of the guarded formula;
# over element sorts the universal sweep is never complete, so this
# encoding can lean positive but never assert TRUE outright.
RK_MEMBER_RING_SRC = (
    "forall e:Elem. forall b:Elem. exists d:Elem. exists c:Elem. "
    "(e*b != 1) or ((d*c == 1) and (d - 1 == (e - 1)*x mod (e - 1)^2))"
)

BUILTIN_FORMULAS = {
    "rk_member": (RK_MEMBER_SRC, ("x",)),
    "rk_member_paper_encoding": (RK_MEMBER_RING_SRC, ("x",)),
}


def builtin_formula(name):
    if name not in BUILTIN_FORMULAS:
        raise KeyError(f"unknown built-in formula {name!r}")
    src, frees = BUILTIN_FORMULAS[name]
    return parse(src, free_vars=frees)
