"""Milnor-Witt K-theory symbols over finite fields and over F_q(t).

Elements are homogeneous sums of terms ``c * eta^m [u_1, ..., u_k]`` of
degree k - m.  Over a finite field the groups are known explicitly
(0 in degrees >= 2, F_q^x in degree 1, GW(F_q) in degree 0, W(F_q) below) and
:func:`normalize_fq` maps an element to that data.  Over F_q(t) the residue
at a closed point is computed through the ring map

    Theta_pi : K^MW(F(t)) -> K^MW(kappa)[xi],   [u pi^n] -> [u] + <u> n_eps xi

with xi^2 = xi [-1] and [a] xi = eps xi [a], eps = -<-1>; writing
Theta(a) = s(a) + xi d(a) gives the residue d and the specialization s.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import (Extension, FieldElement, FieldError, FiniteField, Poly, factor, format_element,
                     format_poly, identity_hom, irreducibles, simple_extension)
from .gw import GWElement, WittElement, n_epsilon, witt_project


class KMWError(ValueError):
    pass


# -- rational functions ------------------------------------------------------

class RatFunc:
    """num/den over a finite field, coprime with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        if den is None:
            den = Poly(num.field, (1,))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            from .fields import poly_gcd
            g = poly_gcd(num, den) if num else Poly(num.field, (1,))
            if g.deg > 0:
                num, den = num // g, den // g
            lc = den.lc
            if lc != num.field.one:
                inv = lc.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @classmethod
    def const(cls, F: FiniteField, c) -> "RatFunc":
        return cls(Poly(F, (c,)), _reduced=True) if F(c) else cls(Poly(F))

    @classmethod
    def t(cls, F: FiniteField) -> "RatFunc":
        return cls(Poly.x(F), _reduced=True)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def key(self):
        return (self.num.key(), self.den.key())

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, _reduced=True)
        return RatFunc.const(self.field, other)

    def __mul__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __add__(self, other):
        other = self._lift(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc.const(self.field, 1) / (self ** (-n))
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def is_constant(self) -> bool:
        return self.num.deg <= 0 and self.den.deg == 0

    def constant(self) -> FieldElement:
        if not self.is_constant():
            raise KMWError("not a constant")
        return self.num.coeffs[0] if self.num else self.field.zero

    def compose(self, g: Poly) -> "RatFunc":
        """Substitute t -> g."""
        return RatFunc(self.num.compose(g), self.den.compose(g))

    def __repr__(self):
        return format_ratfunc(self)


def format_ratfunc(f: RatFunc, var: str = "t") -> str:
    n = format_poly(f.num, var)
    if f.den.deg == 0:
        return n
    d = format_poly(f.den, var)
    wrap = lambda s, p: f"({s})" if (p.deg > 0 and len([c for c in p.coeffs if c]) > 1) else s
    return f"{wrap(n, f.num)}/{wrap(d, f.den)}"


class FunctionField:
    """The rational function field E(var) over a finite field E."""

    _cache: dict = {}

    def __new__(cls, base: FiniteField, var: str = "t"):
        key = (id(base), var)
        inst = cls._cache.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst.base = base
            inst.var = var
            cls._cache[key] = inst
        return inst

    def __repr__(self):
        return f"{self.base}({self.var})"

    def gen(self) -> RatFunc:
        return RatFunc.t(self.base)

    def __call__(self, value) -> RatFunc:
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return RatFunc(value)
        return RatFunc.const(self.base, value)


def _as_entry(field, u):
    if isinstance(field, FiniteField):
        u = field(u)
        if not u:
            raise KMWError("symbol entries must be nonzero")
        return u
    u = field(u)
    if not u:
        raise KMWError("symbol entries must be nonzero")
    return u


# -- symbolic elements -------------------------------------------------------

@dataclass(frozen=True)
class KMWTerm:
    coeff: int
    eta: int
    entries: tuple

    @property
    def degree(self) -> int:
        return len(self.entries) - self.eta


class KMWElement:
    """Homogeneous element sum c eta^m [u_1..u_k] over a finite or function field."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree: int, terms: Iterable[KMWTerm] = ()):
        self.field = field
        self.degree = degree
        ts = []
        for t in terms:
            if t.degree != degree:
                raise KMWError(f"term of degree {t.degree} in element of degree {degree}")
            if t.coeff:
                ts.append(t)
        self.terms = tuple(ts)

    @classmethod
    def zero(cls, field, degree: int) -> "KMWElement":
        return cls(field, degree)

    @classmethod
    def one(cls, field) -> "KMWElement":
        return cls(field, 0, [KMWTerm(1, 0, ())])

    def _check(self, other):
        if other.field is not self.field:
            raise KMWError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise KMWError("cannot add elements of different degrees")
        return KMWElement(self.field, self.degree, self.terms + other.terms)

    def __neg__(self):
        return KMWElement(self.field, self.degree, [KMWTerm(-t.coeff, t.eta, t.entries) for t in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KMWElement(self.field, self.degree, [KMWTerm(t.coeff * other, t.eta, t.entries) for t in self.terms])
        self._check(other)
        terms = [KMWTerm(a.coeff * b.coeff, a.eta + b.eta, a.entries + b.entries)
                 for a in self.terms for b in other.terms]
        return KMWElement(self.field, self.degree + other.degree, terms)

    __rmul__ = __mul__

    def eta_mul(self, m: int = 1) -> "KMWElement":
        return KMWElement(self.field, self.degree - m, [KMWTerm(t.coeff, t.eta + m, t.entries) for t in self.terms])

    def __eq__(self, other):
        if not isinstance(other, KMWElement):
            return NotImplemented
        self._check(other)
        if self.degree != other.degree:
            return False
        if isinstance(self.field, FiniteField):
            return kmw_equal_fq(self, other)
        return equal_ft(self, other)

    __hash__ = None

    def is_zero(self) -> bool:
        return self == KMWElement.zero(self.field, self.degree)

    def __repr__(self):
        return format_kmw(self)


def format_entry(u, var: str = "t") -> str:
    if isinstance(u, FieldElement):
        return format_element(u)
    return format_ratfunc(u, var)


def format_kmw(a: KMWElement) -> str:
    if not a.terms:
        return "0"
    var = getattr(a.field, "var", "t")
    out = []
    for t in a.terms:
        s = "[" + ",".join(format_entry(u, var) for u in t.entries) + "]"
        if t.eta:
            s = ("eta" if t.eta == 1 else f"eta^{t.eta}") + ("*" + s if t.entries else "")
        elif not t.entries:
            s = "1"
        if t.coeff != 1:
            s = f"{t.coeff}*{s}"
        out.append(s)
    return " + ".join(out).replace("+ -", "- ")


def kmw_symbol(field, m: int, entries: Sequence) -> KMWElement:
    ents = tuple(_as_entry(field, u) for u in entries)
    return KMWElement(field, len(ents) - m, [KMWTerm(1, m, ents)])


def kmw_mul(a: KMWElement, b: KMWElement) -> KMWElement:
    return a * b


def eta_mul(a: KMWElement) -> KMWElement:
    return a.eta_mul(1)


def from_gw(a: GWElement) -> KMWElement:
    """Degree-0 element for a GW class: <u> = 1 + eta[u]."""
    F = a.field
    terms = []
    for u, c in a.terms.items():
        terms.append(KMWTerm(c, 0, ()))
        if u != F.one:
            terms.append(KMWTerm(c, 1, (u,)))
    return KMWElement(F, 0, terms)


def restrict(a: KMWElement, hom) -> KMWElement:
    """Push entries along a field embedding ``hom`` (finite fields)."""
    return KMWElement(hom.dst, a.degree, [KMWTerm(t.coeff, t.eta, tuple(hom(u) for u in t.entries))
                                          for t in a.terms])


def res_to_ft(a: KMWElement, K: FunctionField) -> KMWElement:
    """Constant extension K^MW(E) -> K^MW(E(t))."""
    if a.field is not K.base:
        raise KMWError("base field mismatch")
    return KMWElement(K, a.degree, [KMWTerm(t.coeff, t.eta, tuple(RatFunc.const(K.base, u) for u in t.entries))
                                    for t in a.terms])


# -- finite field normal form ------------------------------------------------

@dataclass(frozen=True)
class KMWInvariantsFq:
    """Complete invariant of an element of K^MW_n(F_q).

    ``value`` is None for n >= 2, a unit for n = 1, a GW class for n = 0 and a
    Witt class for n < 0.
    """

    field: FiniteField
    degree: int
    value: object

    @property
    def milnor_part(self):
        if self.degree >= 2:
            return None
        if self.degree == 1:
            return self.value
        if self.degree == 0:
            return self.value.rank
        return None

    @property
    def witt_part(self):
        if self.degree >= 2:
            return WittElement(self.field, 0, 0)
        if self.degree == 1:
            return WittElement(self.field, 0, 0 if self.value.is_square() else 1)
        if self.degree == 0:
            return witt_project(self.value)
        return self.value

    def is_zero(self) -> bool:
        if self.degree >= 2:
            return True
        if self.degree == 1:
            return self.value == self.field.one
        return self.value.is_zero()

    def __eq__(self, other):
        if not isinstance(other, KMWInvariantsFq):
            return NotImplemented
        if self.field is not other.field or self.degree != other.degree:
            return False
        if self.degree >= 2:
            return True
        return self.value == other.value

    def __hash__(self):
        if self.degree >= 2:
            return hash((id(self.field), self.degree))
        return hash((id(self.field), self.degree, self.value))

    def key(self):
        F = self.field
        if self.degree >= 2:
            return (self.degree,)
        if self.degree == 1:
            return (1, self.value.e)
        if self.degree == 0:
            return (0, self.value.rank, self.value.disc().e)
        return (self.degree, self.value.dim_parity, self.value.disc_bit)

    def to_json(self) -> dict:
        out = {"field": str(self.field), "degree": self.degree}
        if self.degree >= 2:
            out["value"] = "0"
        elif self.degree == 1:
            out["value"] = f"[{format_element(self.value)}]"
            out["milnor"] = format_element(self.value)
        elif self.degree == 0:
            out["value"] = repr(self.value)
            out.update(self.value.invariants())
        else:
            w = self.value
            out["value"] = repr(w)
            out["dim_parity"] = w.dim_parity
            out["disc"] = "nonsquare" if w.disc_bit else "square"
        return out


def _gw_of_units(F: FiniteField, units) -> GWElement:
    acc = GWElement.one(F)
    for u in units:
        acc = acc * (GWElement.diagonal(F, [u]) - 1)
    return acc


def normalize_fq(a: KMWElement) -> KMWInvariantsFq:
    F = a.field
    if not isinstance(F, FiniteField):
        raise KMWError("normalize_fq needs a finite field")
    n = a.degree
    if n >= 2:
        return KMWInvariantsFq(F, n, None)
    if n == 1:
        u = F.one
        for t in a.terms:
            if t.eta == 0:
                u = u * t.entries[0] ** t.coeff
        return KMWInvariantsFq(F, 1, u)
    g = GWElement.zero(F)
    for t in a.terms:
        g = g + _gw_of_units(F, t.entries) * t.coeff
    if n == 0:
        return KMWInvariantsFq(F, 0, g)
    return KMWInvariantsFq(F, n, witt_project(g))


def canonical_element(inv: KMWInvariantsFq) -> KMWElement:
    """Short symbolic representative of an invariant tuple."""
    F, n = inv.field, inv.degree
    if n >= 2:
        return KMWElement.zero(F, n)
    if n == 1:
        if inv.value == F.one:
            return KMWElement.zero(F, 1)
        return KMWElement(F, 1, [KMWTerm(1, 0, (inv.value,))])
    g = inv.value if n == 0 else inv.value.lift()
    return from_gw(g).eta_mul(-n) if n < 0 else from_gw(g)


def kmw_equal_fq(a: KMWElement, b: KMWElement) -> bool:
    if a.field is not b.field or a.degree != b.degree:
        raise KMWError("comparison needs the same field and degree")
    return normalize_fq(a) == normalize_fq(b)


def simplify(a: KMWElement) -> KMWElement:
    return canonical_element(normalize_fq(a))


# -- closed points and residues ----------------------------------------------

class ClosedPoint:
    """A place of E(t): a monic irreducible polynomial, or infinity (poly None)."""

    __slots__ = ("base", "poly", "__dict__")

    def __init__(self, base: FiniteField, poly: Poly | None = None):
        if poly is not None:
            if poly.field is not base or not poly.is_monic():
                raise KMWError("closed points are monic irreducible polynomials")
        self.base = base
        self.poly = poly

    @classmethod
    def infinity(cls, base: FiniteField) -> "ClosedPoint":
        return cls(base, None)

    @classmethod
    def rational(cls, base: FiniteField, a) -> "ClosedPoint":
        return cls(base, Poly(base, (-base(a), 1)))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.deg

    @functools.cached_property
    def ext(self) -> Extension:
        """kappa(x) as an extension of the base field, generated by the class of t."""
        if self.poly is None:
            E = self.base
            return Extension(E, E, identity_hom(E), E.zero, Poly.x(E))
        return simple_extension(self.base, self.poly)

    @property
    def kappa(self) -> FiniteField:
        return self.ext.top

    def key(self):
        return (1, ()) if self.poly is None else (0, self.poly.key())

    def __eq__(self, other):
        return isinstance(other, ClosedPoint) and self.base is other.base and self.poly == other.poly

    def __hash__(self):
        return hash((id(self.base), self.poly))

    def __repr__(self):
        return "inf" if self.poly is None else format_poly(self.poly)

    def reduce(self, f: Poly) -> FieldElement:
        return f.evaluate(self.ext.gen, self.ext.emb)

    def split(self, f) -> tuple[int, FieldElement]:
        """(valuation, residue class of the unit part) w.r.t. the canonical uniformizer."""
        if isinstance(f, FieldElement):
            return 0, self.ext.emb(f)
        if not f:
            raise KMWError("valuation of zero")
        if self.poly is None:
            n = f.den.deg - f.num.deg
            u = f.num.lc / f.den.lc
            return n, (-u if n % 2 else u)
        num, vn = _strip(f.num, self.poly)
        den, vd = _strip(f.den, self.poly)
        return vn - vd, self.reduce(num) / self.reduce(den)

    def valuation(self, f) -> int:
        return self.split(f)[0]


def _strip(f: Poly, pi: Poly) -> tuple[Poly, int]:
    v = 0
    while True:
        q, r = divmod(f, pi)
        if r:
            return f, v
        f, v = q, v + 1


def _eps_twist(a: KMWElement) -> KMWElement:
    """Multiply each term by eps^r, r its number of entries (eps = -<-1>)."""
    F = a.field
    m1 = -F.one
    terms = []
    for t in a.terms:
        if t.eta or len(t.entries) % 2 == 0:
            terms.append(t)
        else:
            terms.append(KMWTerm(-t.coeff, t.eta, t.entries))
            terms.append(KMWTerm(-t.coeff, t.eta + 1, (m1,) + t.entries))
    return KMWElement(F, a.degree, terms)


def _theta_term(x: ClosedPoint, term: KMWTerm) -> tuple[KMWElement, KMWElement]:
    k = x.kappa
    S = KMWElement.one(k)
    D = KMWElement.zero(k, -1)
    minus_one = KMWElement(k, 1, [KMWTerm(1, 0, (-k.one,))])
    for f in term.entries:
        n, u = x.split(f)
        A = KMWElement(k, 1, [KMWTerm(1, 0, (u,))])
        B = from_gw(GWElement.diagonal(k, [u]) * n_epsilon(k, n))
        newS = simplify(S * A)
        newD = _eps_twist(S * B) + D * A
        if D.terms:
            newD = newD + minus_one * _eps_twist(D * B)
        S, D = newS, simplify(newD)
    return simplify(S.eta_mul(term.eta) * term.coeff), simplify(D.eta_mul(term.eta) * term.coeff)


def _theta(x: ClosedPoint, g: KMWElement) -> tuple[KMWElement, KMWElement]:
    if not isinstance(g.field, FunctionField) or g.field.base is not x.base:
        raise KMWError("residues are taken on elements of E(t) at points of A^1_E")
    k = x.kappa
    S = KMWElement.zero(k, g.degree)
    D = KMWElement.zero(k, g.degree - 1)
    for t in g.terms:
        s, d = _theta_term(x, t)
        S, D = S + s, D + d
    return simplify(S), simplify(D)


def residue(x: ClosedPoint, g: KMWElement) -> KMWElement:
    """Residue at x with respect to the canonical uniformizer (pi, or -1/t at infinity)."""
    return _theta(x, g)[1]


def support(g: KMWElement) -> list[ClosedPoint]:
    """Finite closed points where some entry is not a unit."""
    E = g.field.base
    polys = set()
    for t in g.terms:
        for f in t.entries:
            if isinstance(f, RatFunc):
                for p in (f.num, f.den):
                    if p.deg > 0:
                        polys.update(h for h, _ in factor(p)[0])
    return [ClosedPoint(E, h) for h in sorted(polys, key=Poly.key)]


def specialize(x: ClosedPoint, g: KMWElement) -> KMWElement:
    """s_x(g) = d_x([pi] g) for g unramified at x; the retraction of restriction."""
    s, d = _theta(x, g)
    if not normalize_fq(d).is_zero():
        raise KMWError(f"element is ramified at {x}")
    return s


def total_residue(g: KMWElement) -> dict:
    return {x: residue(x, g) for x in support(g)}


def _unramified_point(E: FiniteField, bad: set) -> ClosedPoint:
    for deg in (1, 3, 5, 7):
        for f in irreducibles(E, deg):
            if f not in bad:
                return ClosedPoint(E, f)
    raise KMWError("no unramified point found")


def equal_ft(a: KMWElement, b: KMWElement) -> bool:
    """Equality in K^MW(E(t)) through the split exact sequence.

    a - b vanishes iff all its residues vanish and its specialization at one
    point outside the support vanishes.  Points of odd degree are used when
    every rational point is in the support (restriction along odd-degree
    extensions of finite fields is injective on K^MW).
    """
    if a.field is not b.field or a.degree != b.degree:
        raise KMWError("comparison needs the same field and degree")
    d = a - b
    pts = support(d)
    for x in pts:
        if not normalize_fq(residue(x, d)).is_zero():
            return False
    x = _unramified_point(d.field.base, {p.poly for p in pts})
    return normalize_fq(specialize(x, d)).is_zero()


# -- random elements ---------------------------------------------------------

def random_unit(F: FiniteField, rng: random.Random) -> FieldElement:
    return FieldElement(F, rng.randrange(F.order))


def random_poly(F: FiniteField, rng: random.Random, deg: int, monic: bool = False) -> Poly:
    cs = [FieldElement(F, rng.randrange(-1, F.order)) for _ in range(deg)]
    cs.append(F.one if monic else random_unit(F, rng))
    return Poly(F, cs)


def random_ratfunc(F: FiniteField, rng: random.Random, max_num: int = 2, max_den: int = 1) -> RatFunc:
    while True:
        num = random_poly(F, rng, rng.randint(0, max_num))
        den = random_poly(F, rng, rng.randint(0, max_den), monic=True)
        f = RatFunc(num, den)
        if f:
            return f


def random_kmw(field, degree: int, rng: random.Random, n_terms: int = 2, max_eta: int = 2,
               max_entries: int = 3) -> KMWElement:
    """Degree-first random element: eta power <= max_eta, at most max_entries entries."""
    terms = []
    lo = max(0, -degree)
    hi = min(max_eta, max_entries - degree)
    if hi < lo:
        raise KMWError(f"no terms of degree {degree} within the size limits")
    for _ in range(rng.randint(1, n_terms)):
        m = rng.randint(lo, hi)
        k = degree + m
        if isinstance(field, FiniteField):
            ents = tuple(random_unit(field, rng) for _ in range(k))
        else:
            ents = tuple(random_ratfunc(field.base, rng) for _ in range(k))
        terms.append(KMWTerm(rng.choice((1, 1, 1, -1, 2)), m, ents))
    return KMWElement(field, degree, terms)
