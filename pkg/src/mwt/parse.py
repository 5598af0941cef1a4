"""Expression language for ``mwt eval``.

Examples::

    n_eps(GF(3), 2)
    <2,3> over GF(5)
    2*[2] - [4] over GF(5)
    residue(t, [t,2] over GF(3)(t))
    specialize(t-1, [t+1] over GF(3)(t))
    equal([t], [2*t] over GF(3)(t))
    transfer(geo, GF(9)/GF(3) by t^2+1, gw<1>)
    transfer(bt, GF(3) -> t^2+1 -> t^2+x, [x+1])
    decompose(GF(27)/GF(3) by t^3-t+1, [x^2+1])
    trace_form(QQ by t^3-2, <1>)
    factor(2*t^3-2*t over GF(3))

Inside a field, ``x`` is the class of the variable of the defining modulus and
``[c0,c1,...]`` a coefficient vector in that basis; over a function field the
variable is ``t`` (or the name given, as in ``GF(3)(s)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .fields import (Extension, FieldError, FiniteField, Poly, factor, field_of_order, format_element,
                     format_poly, make_field, min_poly, norm_and_trace, simple_extension)
from .gw import (GWElement, QExtension, QQ, GWError, describe_gw, euler_form_transfer, format_gw, n_epsilon,
                 trace_form_transfer)
from .kmw import (ClosedPoint, FunctionField, KMWElement, KMWError, KMWTerm, RatFunc, equal_ft, format_kmw,
                  from_gw, normalize_fq, residue, specialize, support)
from .transfers import Tower, TransferError, bt_decompose, transfer_tower, transition_unit


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class EvalError(ValueError):
    pass


TOKEN = re.compile(r"\s*(?:(->)|(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class Tok:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Tok]:
    out, i = [], 0
    while i < len(src):
        m = TOKEN.match(src, i)
        if m.group(0).strip() == "":
            break
        arrow, num, name, sym = m.groups()
        pos = m.start(m.lastindex)
        if arrow:
            out.append(Tok("sym", "->", pos))
        elif num:
            out.append(Tok("int", num, pos))
        elif name:
            out.append(Tok("name", name, pos))
        else:
            if sym not in "()[]<>,+-*/^":
                raise ParseError(f"unexpected character {sym!r}", pos)
            out.append(Tok("sym", sym, pos))
        i = m.end()
    out.append(Tok("end", "", len(src)))
    return out


# -- AST ----------------------------------------------------------------------

@dataclass
class Sym:           # coeff * eta^m [entries]
    coeff: int
    eta: int
    entries: list


@dataclass
class Diag:          # coeff * eta^m * <a_1, ..., a_k>
    coeff: int
    entries: list
    eta: int = 0


class Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "name") and self.tok.text == text

    def eat(self, text: str) -> Tok:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        t = self.tok
        self.i += 1
        return t

    def int_(self) -> int:
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        if self.tok.kind != "int":
            raise ParseError("expected an integer", self.tok.pos)
        v = int(self.tok.text)
        self.i += 1
        return -v if neg else v

    def name(self) -> str:
        if self.tok.kind != "name":
            raise ParseError("expected a name", self.tok.pos)
        t = self.tok.text
        self.i += 1
        return t

    # arithmetic over a field: returns an AST tuple
    def arith(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.eat(self.tok.text).text
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.eat(self.tok.text).text
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.at("-"):
            self.i += 1
            return ("neg", self.unary())
        node = self.atom()
        if self.at("^"):
            self.i += 1
            node = ("pow", node, self.int_())
        return node

    def atom(self):
        t = self.tok
        if t.kind == "int":
            self.i += 1
            return ("int", int(t.text))
        if t.kind == "name":
            self.i += 1
            return ("var", t.text, t.pos)
        if self.at("["):
            self.i += 1
            vals = [self.int_()]
            while self.at(","):
                self.i += 1
                vals.append(self.int_())
            self.eat("]")
            return ("vec", vals)
        if self.at("("):
            self.i += 1
            node = self.arith()
            self.eat(")")
            return node
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    # K^MW sums
    def kmw_sum(self) -> list:
        terms = [self.kmw_term(1)]
        while self.at("+") or self.at("-"):
            sign = 1 if self.eat(self.tok.text).text == "+" else -1
            terms.append(self.kmw_term(sign))
        return terms

    def kmw_term(self, sign: int):
        if self.at("-"):
            self.i += 1
            sign = -sign
        coeff = 1
        if self.tok.kind == "int":
            coeff = int(self.tok.text)
            self.i += 1
            if not self.at("*"):
                return Sym(sign * coeff, 0, [])
            self.eat("*")
        eta = 0
        if self.at("eta"):
            self.i += 1
            eta = 1
            if self.at("^"):
                self.i += 1
                eta = self.int_()
            if not self.at("*"):
                return Sym(sign * coeff, eta, [])
            self.eat("*")
        if self.at("h"):
            self.i += 1
            return Diag(sign * coeff, [("int", 1), ("int", -1)], eta)
        if self.at("gw"):
            self.i += 1
        if self.at("<"):
            self.i += 1
            ents = [self.arith()]
            while self.at(","):
                self.i += 1
                ents.append(self.arith())
            self.eat(">")
            return Diag(sign * coeff, ents, eta)
        self.eat("[")
        ents = []
        if not self.at("]"):
            ents.append(self.arith())
            while self.at(","):
                self.i += 1
                ents.append(self.arith())
        self.eat("]")
        return Sym(sign * coeff, eta, ents)

    def field(self):
        if self.at("QQ"):
            self.i += 1
            return QQ
        start = self.tok.pos
        self.eat("GF")
        self.eat("(")
        q = self.int_()
        if self.at("^"):
            self.i += 1
            q = q ** self.int_()
        self.eat(")")
        try:
            F = field_of_order(q)
        except FieldError as e:
            raise ParseError(str(e), start) from None
        if self.at("(") and self.peek().kind == "name" and self.peek(2).text == ")":
            self.i += 1
            var = self.name()
            self.eat(")")
            return FunctionField(F, var)
        return F

    def done(self):
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)


# -- evaluation of ASTs ----------------------------------------------------------

def eval_arith(node, field):
    """Evaluate in a finite field (x = modulus class) or a function field (t or its var)."""
    kind = node[0]
    if isinstance(field, FunctionField):
        E = field.base
        lift = lambda v: RatFunc.const(E, v)
    elif field is QQ:
        E = None
        lift = Fraction
    else:
        E = field
        lift = lambda v: field(v)
    if kind == "int":
        return lift(node[1])
    if kind == "vec":
        if E is None:
            raise EvalError("coefficient vectors need a finite field")
        return lift(E.from_coeffs(node[1]))
    if kind == "var":
        name, pos = node[1], node[2]
        if isinstance(field, FunctionField) and name == field.var:
            return field.gen()
        if name == "x" and E is not None:
            return lift(E.z)
        raise ParseError(f"unknown variable {name!r} in {field}", pos)
    if kind == "neg":
        return -eval_arith(node[1], field)
    if kind == "pow":
        base = eval_arith(node[1], field)
        return base ** node[2]
    a, b = eval_arith(node[1], field), eval_arith(node[2], field)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        if not b:
            raise EvalError("division by zero")
        return a / b
    raise EvalError(f"bad node {kind}")


def eval_poly(node, F: FiniteField, var: str = "t") -> Poly:
    f = eval_arith(node, FunctionField(F, var))
    if f.den.deg != 0:
        raise EvalError("expected a polynomial")
    return f.num


def build_kmw(terms: list, field) -> KMWElement:
    parts = []
    for t in terms:
        if isinstance(t, Diag):
            ents = [eval_arith(e, field) for e in t.entries]
            for u in ents:
                if not u:
                    raise EvalError("<0> is not a unit form")
                parts.append(KMWElement(field, -t.eta, [KMWTerm(t.coeff, t.eta, ()), KMWTerm(t.coeff, t.eta + 1, (u,))]))
        else:
            ents = tuple(eval_arith(e, field) for e in t.entries)
            if any(not u for u in ents):
                raise EvalError("symbol entries must be nonzero")
            parts.append(KMWElement(field, len(ents) - t.eta, [KMWTerm(t.coeff, t.eta, ents)]))
    degs = {p.degree for p in parts}
    if len(degs) > 1:
        raise EvalError(f"inhomogeneous sum (degrees {sorted(degs)})")
    acc = parts[0]
    for p in parts[1:]:
        acc = acc + p
    return acc


def build_gw(terms: list, field) -> GWElement:
    g = GWElement.zero(field)
    for t in terms:
        if isinstance(t, Diag) and not t.eta:
            g = g + GWElement.diagonal(field, [eval_arith(e, field) for e in t.entries]) * t.coeff
        elif not t.entries and not t.eta:
            g = g + t.coeff
        else:
            raise EvalError("only diagonal forms are allowed here")
    return g


# -- results ------------------------------------------------------------------

def show_kmw(a: KMWElement) -> dict:
    if isinstance(a.field, FiniteField):
        inv = normalize_fq(a)
        out = inv.to_json()
        if a.degree == 0:
            out["value"] = describe_gw(inv.value)
        return out
    pts = support(a)
    return {"field": str(a.field), "degree": a.degree, "value": format_kmw(a),
            "residues": {repr(x): show_kmw(residue(x, a))["value"] for x in pts + [ClosedPoint.infinity(a.field.base)]}}


def show_gw(g: GWElement) -> dict:
    out = {"field": str(g.field), "value": describe_gw(g), "form": format_gw(g)}
    out.update(g.invariants())
    return out


class Evaluator(Parser):
    """Parses and evaluates one expression."""

    FUNCS = ("n_eps", "gw", "kmw", "residue", "specialize", "equal", "transfer", "decompose", "trace_form",
             "euler_form", "factor", "norm_trace", "min_poly", "transition_unit")

    def run(self) -> dict:
        if self.tok.kind == "name" and self.tok.text in self.FUNCS and self.peek().text == "(":
            fn = self.name()
            self.eat("(")
            out = getattr(self, "f_" + fn)()
            self.eat(")")
        else:
            out = self.value_over()
        self.done()
        return out

    # "<sum> over FIELD"
    def sum_over(self):
        terms = self.kmw_sum()
        self.eat("over")
        F = self.field()
        return terms, F

    def value_over(self) -> dict:
        terms, F = self.sum_over()
        if F is QQ:
            return show_gw(build_gw(terms, QQ))
        return show_kmw(build_kmw(terms, F))

    def f_n_eps(self):
        F = self.field()
        if isinstance(F, FunctionField):
            raise EvalError("n_eps needs a finite field or QQ")
        self.eat(",")
        return show_gw(n_epsilon(F, self.int_()))

    def f_gw(self):
        F = self.field()
        self.eat(",")
        return show_gw(build_gw(self.kmw_sum(), F))

    def f_kmw(self):
        F = self.field()
        self.eat(",")
        return show_kmw(build_kmw(self.kmw_sum(), F))

    def _point_and_element(self):
        node = None if self.at("inf") else self.arith()
        if node is None:
            self.i += 1
        self.eat(",")
        terms, K = self.sum_over()
        if not isinstance(K, FunctionField):
            raise EvalError("residues need an element over a rational function field such as GF(3)(t)")
        g = build_kmw(terms, K)
        if node is None:
            return ClosedPoint.infinity(K.base), g
        pi = eval_poly(node, K.base, K.var)
        fac, _ = factor(pi)
        if len(fac) != 1 or fac[0][1] != 1 or pi.deg < 1:
            raise EvalError(f"{format_poly(pi, K.var)} is not irreducible")
        return ClosedPoint(K.base, pi.monic()), g

    def f_residue(self):
        x, g = self._point_and_element()
        return {"point": repr(x), **show_kmw(residue(x, g))}

    def f_specialize(self):
        x, g = self._point_and_element()
        return {"point": repr(x), **show_kmw(specialize(x, g))}

    def f_equal(self):
        first = self.kmw_sum()
        self.eat(",")
        second, F = self.sum_over()
        a, b = build_kmw(first, F), build_kmw(second, F)
        if a.degree != b.degree:
            raise EvalError(f"degrees differ ({a.degree} and {b.degree})")
        return {"field": str(F), "equal": a == b}

    def ext(self):
        """'GF(Q)/GF(q) by f', 'QQ by f', or a tower 'GF(q) -> f1 -> f2 ...'."""
        base = self.field()
        if base is QQ:
            self.eat("by")
            return QExtension([Fraction(c) for c in _qq_poly(self.arith())])
        if isinstance(base, FunctionField):
            raise EvalError("transfers over function-field bases are out of scope")
        if self.at("/"):
            top = base
            self.i += 1
            base = self.field()
            self.eat("by")
            f = eval_poly(self.arith(), base)
            ext = simple_extension(base, f.monic())
            if ext.top is not top:
                raise EvalError(f"{format_poly(f)} generates {ext.top}, not {top}")
            return Tower([ext])
        polys, F = [], base
        while self.at("->"):
            self.i += 1
            f = eval_poly(self.arith(), F).monic()
            step = simple_extension(F, f)
            polys.append(f)
            F = step.top
        if not polys:
            raise ParseError("expected '/' or '->'", self.tok.pos)
        return Tower.from_polys(base, polys)

    def _top_element(self, tower):
        if isinstance(tower, QExtension):
            return build_gw(self.kmw_sum(), QQ)
        return build_kmw(self.kmw_sum(), tower.top)

    def f_transfer(self):
        mode = self.name()
        if mode not in ("bt", "geo"):
            raise EvalError("mode must be bt or geo")
        self.eat(",")
        tower = self.ext()
        if isinstance(tower, QExtension):
            raise EvalError("over QQ use trace_form or euler_form")
        self.eat(",")
        beta = self._top_element(tower)
        return {"tower": repr(tower), "mode": mode, **show_kmw(transfer_tower(tower, beta, mode))}

    def f_decompose(self):
        tower = self.ext()
        if isinstance(tower, QExtension) or len(tower.steps) != 1:
            raise EvalError("decompose needs a single monogenic step")
        self.eat(",")
        beta = self._top_element(tower)
        ext = tower.steps[0]
        return {"extension": repr(ext), "terms": [t.describe() for t in bt_decompose(ext, beta)]}

    def _form_transfer(self, fn):
        tower = self.ext()
        self.eat(",")
        e = self._top_element(tower)
        if isinstance(tower, QExtension):
            return show_gw(fn(tower, e))
        if len(tower.steps) != 1:
            raise EvalError("form transfers need a single monogenic step")
        if isinstance(e, KMWElement):
            if e.degree != 0:
                raise EvalError("form transfers act on degree 0")
            e = normalize_fq(e).value
        return show_gw(fn(tower.steps[0], e))

    def f_trace_form(self):
        return self._form_transfer(trace_form_transfer)

    def f_euler_form(self):
        return self._form_transfer(euler_form_transfer)

    def f_factor(self):
        node = self.arith()
        self.eat("over")
        F = self.field()
        if not isinstance(F, FiniteField):
            raise EvalError("factor needs a finite field")
        f = eval_poly(node, F)
        if not f:
            raise EvalError("cannot factor the zero polynomial")
        fac, lc = factor(f)
        return {"field": str(F), "factors": [[format_poly(g), m] for g, m in fac], "lc": format_element(lc)}

    def _ext_and_top(self):
        tower = self.ext()
        if isinstance(tower, QExtension) or len(tower.steps) != 1:
            raise EvalError("needs a single monogenic step over a finite field")
        self.eat(",")
        ext = tower.steps[0]
        return ext, eval_arith(self.arith(), ext.top)

    def f_norm_trace(self):
        ext, a = self._ext_and_top()
        n, t = norm_and_trace(ext, a)
        return {"extension": repr(ext), "norm": format_element(n), "trace": format_element(t)}

    def f_min_poly(self):
        ext, a = self._ext_and_top()
        return {"extension": repr(ext), "min_poly": format_poly(min_poly(ext, a))}

    def f_transition_unit(self):
        a = self.ext()
        self.eat(",")
        b = self.ext()
        u = transition_unit(a, b)
        return {"unit": format_element(u), "square": u.is_square()}


def _qq_poly(node) -> list:
    """Integer coefficients (low to high) of a polynomial AST in t."""
    kind = node[0]
    if kind == "int":
        return [node[1]]
    if kind == "var":
        if node[1] != "t":
            raise ParseError(f"unknown variable {node[1]!r}", node[2])
        return [0, 1]
    if kind == "neg":
        return [-c for c in _qq_poly(node[1])]
    if kind == "pow":
        out = [1]
        for _ in range(node[2]):
            out = _qq_mul(out, _qq_poly(node[1]))
        return out
    a, b = _qq_poly(node[1]), _qq_poly(node[2])
    if kind in ("add", "sub"):
        s = 1 if kind == "add" else -1
        n = max(len(a), len(b))
        return [(a[i] if i < len(a) else 0) + s * (b[i] if i < len(b) else 0) for i in range(n)]
    if kind == "mul":
        return _qq_mul(a, b)
    raise EvalError("unsupported operation in a rational polynomial")


def _qq_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def eval_expr(src: str) -> dict:
    """Evaluate an expression; raises ParseError or EvalError."""
    try:
        return Evaluator(src).run()
    except (FieldError, GWError, KMWError, TransferError) as e:
        raise EvalError(str(e)) from None
    except ZeroDivisionError as e:
        raise EvalError(str(e)) from None
