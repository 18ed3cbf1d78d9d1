"""A small expression language for field elements, words and scenario commands.

    script    := stmt ((';' | newline) stmt)*
    stmt      := 'let' NAME '=' expr | 'assert' expr | 'param' NAME (',' NAME)* | expr
    expr      := 'not' expr | sum (('==' | '!=') sum)?
    sum       := prod (('+' | '-') prod)*
    prod      := unary (('*' | '/') unary)*
    unary     := '-' unary | power
    power     := atom ('^' ['-'] INT)?
    atom      := INT | NAME | NAME '(' args ')' | '(' expr ')'
    args      := [arg (',' arg)*] [';' expr]
    arg       := INT '=' expr | expr

'*' multiplies scalars and concatenates words.  ``t`` is the transcendental,
``g`` the generator of F_q, ``b`` a primitive cube root of unity; names like
x10, y or z2 are formal unknowns.  ``#`` starts a comment.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .fields import FieldElem, FieldError, is_k_point, sqrt_char2
from .polyring import MPoly, simplify


class DSLSyntaxError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message, self.line, self.col = message, line, col


class DSLEvalError(ValueError):
    pass


FORMAL = re.compile(r"[xyz]\d*$|[xyz]_\w+$")


# ---------------------------------------------------------------------------
# lexer

@dataclass(frozen=True)
class Token:
    kind: str      # INT, NAME, OP, SEP, EOF
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<comment>\#[^\n]*) | (?P<nl>\n) |
    (?P<int>[0-9]+) | (?P<name>[A-Za-z_][A-Za-z_0-9]*) |
    (?P<op>==|!=|[-+*/^(),;=])
""", re.VERBOSE)


def tokenize(src):
    tokens = []
    pos, line, lstart = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - lstart + 1
        if not m:
            raise DSLSyntaxError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            tokens.append(Token("SEP", "\n", line, col))
            line += 1
            lstart = m.end()
        elif kind == "int":
            tokens.append(Token("INT", text, line, col))
        elif kind == "name":
            tokens.append(Token("NAME", text, line, col))
        elif kind == "op":
            tokens.append(Token("OP", text, line, col))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - lstart + 1))
    return tokens


# ---------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class Num:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Name:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Binding:
    index: int
    expr: object

    def __str__(self):
        return f"{self.index}={self.expr}"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    tail: object = None   # the expression after ';'

    def __str__(self):
        inner = ", ".join(str(a) for a in self.args)
        if self.tail is not None:
            inner += f"; {self.tail}"
        return f"{self.name}({inner})"


_PREC = {"==": 1, "!=": 1, "+": 2, "-": 2, "*": 3, "/": 3}


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    def __str__(self):
        p = _PREC[self.op]
        left = _wrap(self.left, p, False)
        right = _wrap(self.right, p, True)
        return f"{left} {self.op} {right}"


@dataclass(frozen=True)
class Neg:
    expr: object

    def __str__(self):
        return f"-{_wrap(self.expr, 4, False)}"


@dataclass(frozen=True)
class Not:
    expr: object

    def __str__(self):
        return f"not {self.expr}"


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int

    def __str__(self):
        if isinstance(self.base, Pow):
            return f"({self.base})^{self.exp}"
        return f"{_wrap(self.base, 5, False)}^{self.exp}"


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Not):
        return 0
    if isinstance(node, Neg):
        return 4
    return 6


def _wrap(node, p, right):
    q = _prec(node)
    if q < p or (right and q == p):
        return f"({node})"
    return str(node)


@dataclass(frozen=True)
class Let:
    name: str
    expr: object

    def __str__(self):
        return f"let {self.name} = {self.expr}"


@dataclass(frozen=True)
class Assert:
    expr: object

    def __str__(self):
        return f"assert {self.expr}"


@dataclass(frozen=True)
class Param:
    names: tuple

    def __str__(self):
        return "param " + ", ".join(self.names)


@dataclass(frozen=True)
class ExprStmt:
    expr: object

    def __str__(self):
        return str(self.expr)


@dataclass(frozen=True)
class Script:
    statements: tuple
    lines: tuple = ()

    def __eq__(self, other):
        return isinstance(other, Script) and self.statements == other.statements

    def __hash__(self):
        return hash(self.statements)

    def __str__(self):
        return "\n".join(str(s) for s in self.statements)


def pretty(script):
    return str(script)


# ---------------------------------------------------------------------------
# parser

class Parser:
    def __init__(self, src):
        self.toks = tokenize(src)
        self.i = 0
        self.depth = 0

    def peek(self, k=0):
        j = self.i
        seen = 0
        while True:
            tok = self.toks[j]
            if tok.kind == "EOF":
                return tok
            if self.depth > 0 and tok.kind == "SEP":
                j += 1
                continue
            if seen == k:
                return tok
            seen += 1
            j += 1

    def next(self):
        while self.depth > 0 and self.toks[self.i].kind == "SEP":
            self.i += 1
        tok = self.toks[self.i]
        if tok.kind != "EOF":
            self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, tok.line, tok.col)

    def expect(self, text):
        tok = self.next()
        if tok.text != text or tok.kind not in ("OP", "NAME"):
            self.error(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok)
        return tok

    def at_op(self, *ops):
        tok = self.peek()
        return tok.kind == "OP" and tok.text in ops

    def script(self):
        stmts, lines = [], []
        while True:
            while self.peek().kind == "SEP" or self.at_op(";"):
                self.next()
            if self.peek().kind == "EOF":
                break
            tok = self.peek()
            stmts.append(self.statement())
            lines.append(tok.line)
            nxt = self.peek()
            if nxt.kind not in ("SEP", "EOF") and not (nxt.kind == "OP" and nxt.text == ";"):
                self.error(f"unexpected {nxt.text!r} after statement", nxt)
        return Script(tuple(stmts), tuple(lines))

    def statement(self):
        tok = self.peek()
        if tok.kind == "NAME" and tok.text == "let":
            self.next()
            name = self.next()
            if name.kind != "NAME":
                self.error("expected a name after 'let'", name)
            self.expect("=")
            return Let(name.text, self.expr())
        if tok.kind == "NAME" and tok.text == "assert":
            self.next()
            return Assert(self.expr())
        if tok.kind == "NAME" and tok.text == "param":
            self.next()
            names = []
            while True:
                n = self.next()
                if n.kind != "NAME":
                    self.error("expected a parameter name", n)
                names.append(n.text)
                if not self.at_op(","):
                    break
                self.next()
            return Param(tuple(names))
        return ExprStmt(self.expr())

    def expr(self):
        tok = self.peek()
        if tok.kind == "NAME" and tok.text == "not":
            self.next()
            return Not(self.expr())
        left = self.sum()
        if self.at_op("==", "!="):
            op = self.next().text
            left = BinOp(op, left, self.sum())
        return left

    def sum(self):
        left = self.prod()
        while self.at_op("+", "-"):
            op = self.next().text
            left = BinOp(op, left, self.prod())
        return left

    def prod(self):
        left = self.unary()
        while self.at_op("*", "/"):
            op = self.next().text
            left = BinOp(op, left, self.unary())
        return left

    def unary(self):
        if self.at_op("-"):
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            self.next()
            sign = 1
            if self.at_op("-"):
                self.next()
                sign = -1
            tok = self.next()
            if tok.kind != "INT":
                self.error("exponent must be an integer", tok)
            base = Pow(base, sign * int(tok.text))
        return base

    def atom(self):
        tok = self.next()
        if tok.kind == "INT":
            return Num(int(tok.text))
        if tok.kind == "NAME":
            if tok.text in ("let", "assert", "param", "not"):
                self.error(f"keyword {tok.text!r} cannot be used here", tok)
            if self.at_op("("):
                return self.call(tok.text)
            return Name(tok.text)
        if tok.kind == "OP" and tok.text == "(":
            self.depth += 1
            e = self.expr()
            self.expect(")")
            self.depth -= 1
            return e
        self.error(f"unexpected {tok.text or 'end of input'!r}", tok)

    def call(self, name):
        self.expect("(")
        self.depth += 1
        args, tail = [], None
        if not self.at_op(")", ";"):
            while True:
                a, b = self.peek(), self.peek(1)
                if a.kind == "INT" and b.kind == "OP" and b.text == "=":
                    self.next()
                    self.next()
                    args.append(Binding(int(a.text), self.expr()))
                else:
                    args.append(self.expr())
                if not self.at_op(","):
                    break
                self.next()
        if self.at_op(";"):
            self.next()
            tail = self.expr()
        self.expect(")")
        self.depth -= 1
        return Call(name, tuple(args), tail)


def parse(src):
    """Parse a script; raises DSLSyntaxError with line and column."""
    p = Parser(src)
    try:
        return p.script()
    except RecursionError:
        tok = p.toks[min(p.i, len(p.toks) - 1)]
        raise DSLSyntaxError("expression nested too deeply", tok.line, tok.col) from None


def parse_expr(src):
    s = parse(src)
    if len(s.statements) != 1 or not isinstance(s.statements[0], ExprStmt):
        raise DSLSyntaxError("expected a single expression", 1, 1)
    return s.statements[0].expr


# ---------------------------------------------------------------------------
# evaluation

class NoLimit:
    def __str__(self):
        return "none"

    def __eq__(self, other):
        return isinstance(other, NoLimit)

    def __hash__(self):
        return 0


def _is_scalar(v):
    return isinstance(v, (FieldElem, MPoly))


def eval_scalar(node, field, names=None):
    """Evaluate a scalar expression without a group context."""
    names = names or {}
    if isinstance(node, Num):
        return field(node.value)
    if isinstance(node, Name):
        n = node.name
        if n in names:
            return names[n]
        if n == "t":
            return field.t()
        if n == "g":
            return field.gen()
        if n == "b":
            return field.cube_root_of_unity()
        if FORMAL.match(n):
            return MPoly.var(field, n)
        raise DSLEvalError(f"unknown identifier {n!r}")
    if isinstance(node, Neg):
        return simplify(-eval_scalar(node.expr, field, names))
    if isinstance(node, Pow):
        return simplify(eval_scalar(node.base, field, names) ** node.exp)
    if isinstance(node, BinOp) and node.op in "+-*/":
        a = eval_scalar(node.left, field, names)
        b = eval_scalar(node.right, field, names)
        if node.op == "+":
            return simplify(a + b)
        if node.op == "-":
            return simplify(a - b)
        if node.op == "*":
            return simplify(a * b)
        if isinstance(b, MPoly) and not b.is_constant():
            raise DSLEvalError("division by a non-constant polynomial")
        return simplify(a / simplify(b))
    if isinstance(node, Call) and node.name == "sqrt":
        return _sqrt(eval_scalar(node.args[0], field, names))
    raise DSLEvalError(f"not a scalar expression: {node}")


def parse_scalar(text, field):
    """A field element or polynomial from its printed form, e.g. 't^2/(t+1)' or 'x20+x21'."""
    return eval_scalar(parse_expr(text), field)


def _sqrt(x):
    if isinstance(x, MPoly):
        raise DSLEvalError("sqrt of a polynomial in unknowns")
    r = sqrt_char2(x)
    if r is None:
        raise DSLEvalError(f"{x} has no square root in K")
    return r


class Evaluator:
    """Evaluates statements against a ChevalleyGroup; keeps let-bindings."""

    def __init__(self, group):
        from .words import GroupWord

        self.G = group
        self.env = {}
        self._word_type = GroupWord

    # -- helpers
    def _int(self, node):
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Neg) and isinstance(node.expr, Num):
            return -node.expr.value
        raise DSLEvalError(f"expected an integer literal, got {node}")

    def _word(self, v, what="argument"):
        from .words import TorusElem

        if isinstance(v, self._word_type):
            return v
        if isinstance(v, TorusElem):
            return self.G.torus_word(v)
        raise DSLEvalError(f"{what} must be a word, got {_describe(v)}")

    def _cochar(self, v):
        from .parabolic import Cocharacter

        if isinstance(v, Cocharacter):
            return v
        raise DSLEvalError(f"expected a cocharacter, got {_describe(v)}")

    def _scalar(self, v):
        if isinstance(v, int):
            return self.G.field(v)
        if _is_scalar(v):
            return v
        raise DSLEvalError(f"expected a field element, got {_describe(v)}")

    def _root(self, node):
        r = self._int(node)
        try:
            return self.G.rs.root(r).index
        except Exception:
            raise DSLEvalError(f"{r} is not a root index") from None

    def eval(self, node):
        G = self.G
        if isinstance(node, Num):
            return G.field(node.value)
        if isinstance(node, Name):
            if node.name in self.env:
                return self.env[node.name]
            return eval_scalar(node, G.field)
        if isinstance(node, Neg):
            v = self.eval(node.expr)
            if _is_scalar(v):
                return simplify(-v)
            raise DSLEvalError("unary minus applies to scalars only")
        if isinstance(node, Not):
            v = self.eval(node.expr)
            if not isinstance(v, bool):
                raise DSLEvalError(f"'not' needs a boolean, got {_describe(v)}")
            return not v
        if isinstance(node, Pow):
            v = self.eval(node.base)
            if _is_scalar(v):
                if isinstance(v, MPoly) and node.exp < 0:
                    raise DSLEvalError("negative power of a polynomial")
                return simplify(v ** node.exp)
            w = self._word(v, "base")
            if node.exp < 0:
                w, n = w.inverse(), -node.exp
            else:
                n = node.exp
            out = G.identity()
            for _ in range(n):
                out = out * w
            return out
        if isinstance(node, BinOp):
            return self._binop(node)
        if isinstance(node, Call):
            return self._call(node)
        if isinstance(node, Binding):
            raise DSLEvalError("bindings are only allowed inside torus(...)")
        raise DSLEvalError(f"cannot evaluate {node}")

    def _binop(self, node):
        a, b = self.eval(node.left), self.eval(node.right)
        op = node.op
        if op in ("==", "!="):
            eq = self._equal(a, b)
            return eq if op == "==" else not eq
        if _is_scalar(a) and _is_scalar(b):
            if op == "+":
                return simplify(a + b)
            if op == "-":
                return simplify(a - b)
            if op == "*":
                return simplify(a * b)
            b = simplify(b)
            if isinstance(b, MPoly) or b.is_zero():
                raise DSLEvalError("division by zero or by a polynomial")
            return simplify(a / b)
        if op == "*":
            return self._word(a, "left factor") * self._word(b, "right factor")
        raise DSLEvalError(f"operator {op!r} is not defined for {_describe(a)} and {_describe(b)}")

    def _equal(self, a, b):
        from .words import CollectionError, ad_equal, collect

        if _is_scalar(a) and _is_scalar(b):
            return simplify(a - b).is_zero()
        if isinstance(a, self._word_type) and isinstance(b, self._word_type):
            try:
                return collect(a) == collect(b)
            except CollectionError:
                return ad_equal(a, b)
        return a == b

    def _call(self, node):
        from . import crcheck, parabolic, words

        G = self.G
        name, args = node.name, node.args
        if name == "e":
            _arity(node, 2)
            return G.e(self._root(args[0]), self._scalar(self.eval(args[1])))
        if name == "n":
            _arity(node, 1)
            return G.n(self._root(args[0]))
        if name == "cochar":
            coeffs = tuple(self._int(a) for a in args)
            if len(coeffs) != G.rs.rank:
                raise DSLEvalError(f"cochar needs {G.rs.rank} coefficients")
            lam = parabolic.Cocharacter(coeffs)
            if node.tail is None:
                return lam
            val = self._scalar(self.eval(node.tail))
            if isinstance(val, MPoly):
                raise DSLEvalError("cochar value must be a field element")
            return G.torus_word(G.cochar_elem(coeffs, val))
        if name == "coroot":
            if len(args) != 1 or node.tail is None:
                raise DSLEvalError("usage: coroot(root; value)")
            return G.torus_word(G.coroot_elem(self._root(args[0]), self._scalar(self.eval(node.tail))))
        if name == "torus":
            vals = {}
            for a in args:
                if not isinstance(a, Binding):
                    raise DSLEvalError("torus takes bindings i=value")
                if not 1 <= a.index <= G.rs.rank:
                    raise DSLEvalError(f"torus index {a.index} out of range")
                v = self._scalar(self.eval(a.expr))
                if isinstance(v, MPoly):
                    raise DSLEvalError("torus values must be field elements")
                vals[a.index] = v
            return G.torus_word(G.torus(vals))
        if name == "inverse":
            _arity(node, 1)
            return self._word(self.eval(args[0])).inverse()
        if name == "collect":
            w = self._word(self.eval(args[0]))
            lam = self._cochar(self.eval(args[1])) if len(args) > 1 else None
            return _collect(w, lam)
        if name == "conj":
            if len(args) not in (2, 3):
                raise DSLEvalError("usage: conj(u, w [, cochar])")
            u = self._word(self.eval(args[0]))
            w = self._word(self.eval(args[1]))
            lam = self._cochar(self.eval(args[2])) if len(args) > 2 else None
            return _collect(u * w * u.inverse(), lam)
        if name == "weyl":
            _arity(node, 2)
            return words.conj_by_weyl(self._root(args[0]), self._word(self.eval(args[1])))
        if name == "limit":
            _arity(node, 2)
            lim = parabolic.take_limit(self._cochar(self.eval(args[0])), self._word(self.eval(args[1])))
            return NoLimit() if lim is None else lim
        if name == "in_parabolic":
            _arity(node, 2)
            return parabolic.in_parabolic(self._word(self.eval(args[0])), self._cochar(self.eval(args[1])))
        if name == "classify":
            _arity(node, 1)
            return parabolic.classify(G.rs, self._cochar(self.eval(args[0])))
        if name == "weight":
            _arity(node, 2)
            return parabolic.weight(G.rs, self._cochar(self.eval(args[0])), self._root(args[1]))
        if name == "is_k":
            _arity(node, 1)
            v = self._scalar(self.eval(args[0]))
            if isinstance(v, MPoly):
                raise DSLEvalError("is_k needs a field element")
            return is_k_point(v)
        if name == "sqrt":
            _arity(node, 1)
            return _sqrt(self._scalar(self.eval(args[0])))
        if name == "sigma":
            _arity(node, 1)
            return crcheck.sigma_isogeny(self._word(self.eval(args[0])))
        if name == "obstruct":
            a = self._scalar(self.eval(args[0])) if args else None
            return crcheck.first_obstruction(G, a=a)
        if name == "verify_paper":
            _arity(node, 0)
            return crcheck.run_corpus(G)
        raise DSLEvalError(f"unknown function {name!r}")


def _collect(w, lam):
    from .words import CollectionError, collect

    try:
        return collect(w, cochar=lam).as_word()
    except CollectionError as exc:
        raise DSLEvalError(str(exc)) from None


def _arity(node, n):
    if len(node.args) != n or node.tail is not None:
        raise DSLEvalError(f"{node.name} takes {n} argument{'s' if n != 1 else ''}")


def _describe(v):
    return type(v).__name__


def to_jsonable(v):
    """A deterministic JSON value for any evaluation result."""
    from .crcheck import ObstructionSystem, ScenarioResult
    from .parabolic import Cocharacter
    from .words import GroupWord

    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, (FieldElem, MPoly)):
        return str(v)
    if isinstance(v, GroupWord):
        return {"word": str(v)}
    if isinstance(v, Cocharacter):
        return {"cochar": list(v.coeffs)}
    if isinstance(v, NoLimit):
        return {"limit": None}
    if isinstance(v, ObstructionSystem):
        return v.to_json()
    if isinstance(v, dict):
        return {str(k): to_jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        if v and isinstance(v[0], ScenarioResult):
            return [r.to_json() for r in v]
        return [to_jsonable(x) for x in v]
    return str(v)


def to_text(v):
    from .crcheck import ObstructionSystem, ScenarioResult, report_text

    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list) and v and isinstance(v[0], ScenarioResult):
        return report_text(v)
    if isinstance(v, ObstructionSystem):
        return json.dumps(v.to_json(), sort_keys=True, indent=2)
    if isinstance(v, dict):
        return json.dumps(to_jsonable(v), sort_keys=True)
    return str(v)


@dataclass
class StatementResult:
    index: int
    line: int
    source: str
    kind: str            # "value", "let", "assert", "param", "error"
    value: object = None
    ok: bool = True
    error: str = ""

    def to_json(self):
        out = {"index": self.index, "line": self.line, "statement": self.source, "kind": self.kind, "ok": self.ok}
        if self.kind in ("value", "let"):
            out["value"] = to_jsonable(self.value)
        if self.error:
            out["error"] = self.error
        return out


def run(script, group, evaluator=None):
    """Evaluate a parsed script; returns a list of StatementResult (stops at the first error)."""
    from .crcheck import ScenarioResult

    ev = evaluator or Evaluator(group)
    results = []
    lines = script.lines or (0,) * len(script.statements)
    for i, (stmt, line) in enumerate(zip(script.statements, lines)):
        src = str(stmt)
        try:
            if isinstance(stmt, Let):
                v = ev.eval(stmt.expr)
                ev.env[stmt.name] = v
                results.append(StatementResult(i, line, src, "let", v))
            elif isinstance(stmt, Assert):
                v = ev.eval(stmt.expr)
                if not isinstance(v, bool):
                    raise DSLEvalError(f"assertion needs a boolean, got {_describe(v)}")
                results.append(StatementResult(i, line, src, "assert", v, ok=v,
                                               error="" if v else "assertion failed"))
            elif isinstance(stmt, Param):
                for n in stmt.names:
                    ev.env[n] = MPoly.var(group.field, n)
                results.append(StatementResult(i, line, src, "param"))
            else:
                v = ev.eval(stmt.expr)
                ok = True
                if isinstance(v, list) and v and isinstance(v[0], ScenarioResult):
                    ok = all(r.status == "pass" for r in v)
                results.append(StatementResult(i, line, src, "value", v, ok=ok,
                                               error="" if ok else "corpus failure"))
        except (DSLEvalError, FieldError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
            results.append(StatementResult(i, line, src, "error", ok=False, error=str(exc)))
            break
    return results
