"""Bass-Tate transfers for finite extensions of finite fields.

For a monogenic extension E(x)/E with monic minimal polynomial f, an element
of K^MW(E(x)) is first written as a K^MW(E)-combination of symbols
eta^m [p_1(x), ..., p_n(x)] with deg p_i < deg f (:func:`bt_decompose`).  Each
such symbol is lifted to gamma = eta^m [f(t), p_1(t), ..., p_n(t)] over E(t),
whose residue at x is the symbol itself, and

    Tr_x(symbol) = -d_inf(gamma) - sum_{y != x} Tr_y(d_y(gamma)).

The points y have degree < deg f, so the recursion terminates.  The geometric
transfer twists by <f'(x)> first; it does not depend on the generator.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .fields import (Extension, FieldElement, FieldHom, FiniteField, Poly, canonical_embedding, factor,
                     format_poly, identity_hom, make_field, simple_extension)
from .gw import GWElement
from .kmw import (ClosedPoint, FunctionField, KMWElement, KMWError, KMWTerm, RatFunc, from_gw, normalize_fq,
                  canonical_element, residue, restrict, simplify, support)

MODES = ("bt", "geo")


class TransferError(ValueError):
    pass


# -- generator decomposition -------------------------------------------------

@dataclass(frozen=True)
class DecompTerm:
    """res(coeff) * eta^eta [p_1(x), ..., p_n(x)] with coeff over the base."""

    coeff: KMWElement
    eta: int
    polys: tuple

    def describe(self, var: str = "x") -> str:
        inner = ",".join(format_poly(p, var) for p in self.polys)
        e = "" if not self.eta else ("eta*" if self.eta == 1 else f"eta^{self.eta}*")
        if not self.polys and not self.eta:
            return str(self.coeff)
        sym = f"{e}[{inner}]" if self.polys else e.rstrip("*")
        c = self.coeff.terms
        if len(c) == 1 and not c[0].eta and not c[0].entries:
            n = c[0].coeff
            return sym if n == 1 else f"{n}*{sym}"
        return f"({self.coeff})*{sym}"


def _linear_exponents(ext: Extension, u: FieldElement):
    """Write u = c * prod (x - a)^k_a with c in the base, or return None."""
    F, E = ext.top, ext.base
    N = F.order // E.order
    cands = []
    for a in sorted(E.elements(), key=FieldElement.key):
        w = ext.gen - ext.emb(a)
        cands.append((a, w.e % N))
    # extended gcd over the candidate logs modulo N
    g, coef = N, [0] * len(cands)
    for i, (_, l) in enumerate(cands):
        if l % g == 0:
            continue
        d, s, t = _xgcd(g, l)
        coef = [c * s for c in coef]
        coef[i] += t
        g = d
    target = u.e % N
    if target % g:
        return None
    k = target // g
    exps = [(a, (c * k) % N) for (a, _), c in zip(cands, coef)]
    exps = [(a, e) for a, e in exps if e]
    rest = u
    for a, e in exps:
        rest = rest / (ext.gen - ext.emb(a)) ** e
    return ext.pullback(rest), exps


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, math.isqrt(n) + 1))


def _nonsquare_poly(ext: Extension) -> Poly:
    """A polynomial of least degree whose value at the generator is a nonsquare."""
    E = ext.base
    elems = sorted(E.elements(), key=FieldElement.key)
    for deg in range(1, ext.d):
        for cs in itertools.product(elems, repeat=deg):
            p = Poly(E, list(cs) + [E.one])
            v = p.evaluate(ext.gen, ext.emb)
            if v and not v.is_square():
                return p
    raise TransferError("no nonsquare found")  # impossible for even degree


def bt_decompose(ext: Extension, beta: KMWElement, strategy: str | None = None) -> list[DecompTerm]:
    """Decompose beta over E(x) into symbols in polynomials of degree < [E(x):E].

    Uses the normal form of K^MW over a finite field: degree >= 2 is zero,
    degree 1 is E(x)^x (factored as a polynomial in x, or linearized by
    discrete logarithms for prime degree), and degrees <= 0 only need a
    nonsquare class.
    """
    E, F = ext.base, ext.top
    if beta.field is not F:
        raise TransferError(f"element lives over {beta.field}, not {F}")
    if strategy is None:
        strategy = "linear" if _is_prime(ext.d) else "factor"
    inv = normalize_fq(beta)
    n = inv.degree
    if n >= 2 or inv.is_zero():
        return []
    out: list[DecompTerm] = []
    if n == 1:
        u = inv.value
        if ext.d == 1:
            return [DecompTerm(canonical_element(type(inv)(E, 1, ext.pullback(u))), 0, ())]
        lin = _linear_exponents(ext, u) if strategy == "linear" else None
        if lin is not None:
            c, exps = lin
            pairs = [(Poly(E, (-a, 1)), e) for a, e in exps]
        else:
            g = ext.as_poly(u)
            fac, c = factor(g)
            pairs = fac
        if c != E.one:
            out.append(DecompTerm(KMWElement(E, 1, [KMWTerm(1, 0, (c,))]), 0, ()))
        for p, e in pairs:
            out.append(DecompTerm(KMWElement.one(E) * e, 0, (p,)))
        return out
    g = inv.value if n == 0 else inv.value.lift()
    a = g.terms.get(F.one, 0)
    b = g.terms.get(F.nonsquare, 0)
    m = -n
    if ext.d % 2 or b == 0:
        coeff = from_gw(GWElement(E, {E.one: a}) + GWElement.diagonal(E, [E.nonsquare]) * b)
        return [DecompTerm(coeff.eta_mul(m) if m else coeff, 0, ())]
    p = _nonsquare_poly(ext)
    return [DecompTerm(KMWElement.one(E) * (a + b), m, ()),
            DecompTerm(KMWElement.one(E) * b, m + 1, (p,))]


def reassemble(ext: Extension, terms: Sequence[DecompTerm], degree: int) -> KMWElement:
    F = ext.top
    acc = KMWElement.zero(F, degree)
    for t in terms:
        sym = KMWElement(F, len(t.polys) - t.eta,
                         [KMWTerm(1, t.eta, tuple(p.evaluate(ext.gen, ext.emb) for p in t.polys))])
        acc = acc + restrict(t.coeff, ext.emb) * sym
    return acc


# -- transfers ----------------------------------------------------------------

def _pull_entries(ext: Extension, beta: KMWElement) -> KMWElement:
    return KMWElement(ext.base, beta.degree, [KMWTerm(t.coeff, t.eta, tuple(ext.pullback(u) for u in t.entries))
                                              for t in beta.terms])


@functools.lru_cache(maxsize=4096)
def _basic_transfer(E: FiniteField, f: Poly, eta: int, polys: tuple) -> KMWElement:
    """Tr of eta^m [p_1(x), ...] along E[t]/(f), via the lift eta^m [f, p_1, ...]."""
    K = FunctionField(E)
    ents = (RatFunc(f),) + tuple(RatFunc(p) for p in polys)
    gamma = KMWElement(K, len(ents) - eta, [KMWTerm(1, eta, ents)])
    total = -residue(ClosedPoint.infinity(E), gamma)
    for y in support(gamma):
        if y.poly == f:
            continue
        total = total - transfer_bt(y.ext, residue(y, gamma))
    return simplify(total)


def _check_base(ext: Extension):
    if not isinstance(ext.base, FiniteField):
        raise TransferError("transfers are only available over finite-field bases")


def transfer_bt(ext: Extension, beta: KMWElement) -> KMWElement:
    """Bass-Tate transfer K^MW(E(x)) -> K^MW(E) for the generator of ``ext``."""
    _check_base(ext)
    if beta.field is not ext.top:
        raise TransferError(f"element lives over {beta.field}, not {ext.top}")
    E = ext.base
    if ext.d == 1:
        return simplify(_pull_entries(ext, beta))
    f = ext.min_poly
    total = KMWElement.zero(E, beta.degree)
    for t in bt_decompose(ext, beta):
        total = total + t.coeff * _basic_transfer(E, f, t.eta, t.polys)
    return simplify(total)


def twist(ext: Extension, beta: KMWElement) -> KMWElement:
    """<f'(x)> * beta."""
    u = ext.derivative_at_gen()
    return from_gw(GWElement.diagonal(ext.top, [u])) * beta


def transfer_geo(ext: Extension, beta: KMWElement) -> KMWElement:
    """Geometric transfer: Bass-Tate applied to <f'(x)> beta."""
    return transfer_bt(ext, twist(ext, beta))


def transfer(ext: Extension, beta: KMWElement, mode: str = "geo") -> KMWElement:
    if mode == "bt":
        return transfer_bt(ext, beta)
    if mode == "geo":
        return transfer_geo(ext, beta)
    raise TransferError(f"unknown mode {mode!r} (expected bt or geo)")


# -- towers -------------------------------------------------------------------

class Tower:
    """E = F_0 c F_1 c ... c F_r, each step monogenic."""

    def __init__(self, steps: Sequence[Extension]):
        steps = list(steps)
        if not steps:
            raise TransferError("a tower needs at least one step")
        for a, b in zip(steps, steps[1:]):
            if b.base is not a.top:
                raise TransferError("tower steps do not chain")
        self.steps = steps

    @property
    def base(self) -> FiniteField:
        return self.steps[0].base

    @property
    def top(self) -> FiniteField:
        return self.steps[-1].top

    @property
    def degree(self) -> int:
        return math.prod(s.d for s in self.steps)

    def __repr__(self):
        return " -> ".join([str(self.base)] + [format_poly(s.min_poly) for s in self.steps])

    def describe(self) -> str:
        return " -> ".join([str(self.base)] + [f"{s.top}:{format_poly(s.min_poly)}" for s in self.steps])

    def embedding(self, i: int) -> FieldHom:
        """steps[i].top -> top."""
        h = identity_hom(self.top)
        for s in reversed(self.steps[i + 1:]):
            h = h.compose(s.emb)
        return h

    def base_embedding(self) -> FieldHom:
        return self.embedding(0).compose(self.steps[0].emb)

    @classmethod
    def from_polys(cls, base: FiniteField, polys: Sequence[Poly]) -> "Tower":
        steps, F = [], base
        for f in polys:
            if f.field is not F:
                raise TransferError(f"{format_poly(f)} is not a polynomial over {F}")
            ext = simple_extension(F, f.monic())
            steps.append(ext)
            F = ext.top
        return cls(steps)

    @classmethod
    def in_field(cls, top: FiniteField, degrees: Sequence[int], gens: Sequence[int] | None = None) -> "Tower":
        """Tower of subfields of ``top`` with field degrees (over F_p) ``degrees``.

        ``degrees`` runs from the base to top.k.  Step i uses the generator of
        index gens[i] among the elements of the step's top that generate it over
        the step's base, ordered by discrete log.
        """
        p = top.p
        if degrees[-1] != top.k:
            raise TransferError("the last degree must be the degree of the top field")
        fields = [make_field(p, k) for k in degrees[:-1]] + [top]
        embs = [canonical_embedding(F, top) for F in fields]
        gens = gens or [0] * (len(fields) - 1)
        steps = []
        for i in range(len(fields) - 1):
            lo, hi = fields[i], fields[i + 1]
            h = FieldHom(lo, hi, image_of_primitive=embs[i + 1].preimage(embs[i](lo.primitive)))
            g = _nth_generator(h, gens[i])
            steps.append(Extension(lo, hi, h, g))
        return cls(steps)


def _nth_generator(h: FieldHom, n: int) -> FieldElement:
    """The n-th element (by discrete log) of h.dst generating it over h.src."""
    lo, hi = h.src, h.dst
    d = hi.k // lo.k
    seen = 0
    for e in range(hi.order):
        a = FieldElement(hi, e)
        if _generates(a, lo.q, d):
            if seen == n:
                return a
            seen += 1
    raise TransferError("not enough generators")


def _generates(a: FieldElement, qb: int, d: int) -> bool:
    c = a
    for _ in range(d - 1):
        c = c ** qb
        if c == a:
            return False
    return True


def transfer_tower(tower: Tower, beta: KMWElement, mode: str = "geo") -> KMWElement:
    """Compose step transfers from the top step down to the base."""
    for step in reversed(tower.steps):
        beta = transfer(step, beta, mode)
    return beta


def transition_unit(a: Tower, b: Tower) -> FieldElement:
    """Unit u of the common top with BT_a(<u> beta) = BT_b(beta) (mod squares).

    The product of the embedded derivatives f_i'(x_i) of tower a divided by
    the same product for tower b.
    """
    if a.top is not b.top or a.base is not b.base:
        raise TransferError("towers must share base and top fields")
    if a.base_embedding() != b.base_embedding():
        raise TransferError("towers embed the base differently")
    return _derivative_product(a) / _derivative_product(b)


def _derivative_product(t: Tower) -> FieldElement:
    acc = t.top.one
    for i, s in enumerate(t.steps):
        acc = acc * t.embedding(i)(s.derivative_at_gen())
    return acc


# -- base change ----------------------------------------------------------------

@dataclass
class Component:
    ext: Extension        # L(theta_j) / L
    hom: FieldHom          # F -> L(theta_j), x -> theta_j, compatible on E
    factor: Poly


def tensor_components(ext: Extension, L_emb: FieldHom) -> list[Component]:
    """Factors of F tensor_E L for F = ext.top and an embedding E -> L."""
    E, F = ext.base, ext.top
    if L_emb.src is not E:
        raise TransferError("base change needs an embedding of the base")
    L = L_emb.dst
    f = ext.min_poly.map(L_emb)
    fac, _ = factor(f)
    x_poly = ext.as_poly(F.primitive)
    out = []
    for g, mult in fac:
        if mult != 1:
            raise TransferError("inseparable base change is out of scope")
        K = simple_extension(L, g)
        img = x_poly.map(L_emb).evaluate(K.gen, K.emb)
        out.append(Component(K, FieldHom(F, K.top, image_of_primitive=img), g))
    return out
