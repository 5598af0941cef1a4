"""Grothendieck-Witt and Witt rings of finite fields (odd q) and of Q.

Equality is decided by complete invariants.  Over F_q the pair
(rank, discriminant square class) determines an element of GW; the
discriminant is the plain product of the diagonal entries.  Over Q an actual
form is classified by rank, signature, discriminant and the Hasse symbols at
every prime; virtual elements are compared after moving negative parts across.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

from .fields import Extension, FieldElement, FieldError, FiniteField, Poly, prime_factors


class GWError(ValueError):
    pass


class RationalField:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "QQ"


QQ = RationalField()


# -- rational square classes and Hilbert symbols -----------------------------

@functools.lru_cache(maxsize=4096)
def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer."""
    if n == 0:
        raise GWError("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    for p in prime_factors(n) if n > 1 else []:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
    return sign * out


def rat_square_class(a) -> int:
    a = Fraction(a)
    if a == 0:
        raise GWError("zero has no square class")
    return squarefree_part(a.numerator * a.denominator)


def _legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a: int, b: int, p) -> int:
    """(a, b)_p for nonzero integers; ``p`` a prime or the string 'inf'."""
    if p == "inf":
        return -1 if a < 0 and b < 0 else 1

    def split(x):
        e = 0
        while x % p == 0:
            x //= p
            e += 1
        return e, x

    alpha, u = split(a)
    beta, v = split(b)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        s = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if s % 2 else 1
    s = 1
    if (alpha * beta * ((p - 1) // 2)) % 2:
        s = -s
    if beta % 2:
        s *= _legendre(u, p)
    if alpha % 2:
        s *= _legendre(v, p)
    return s


def hasse_invariant(entries: Sequence[int], p) -> int:
    s = 1
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            s *= hilbert_symbol(entries[i], entries[j], p)
    return s


# -- GW elements ---------------------------------------------------------------

class GWElement:
    """Formal integer combination sum c_a <a> over F_q or QQ.

    Over F_q the terms are kept in the canonical shape a<1> + b<s> with
    b in {0, 1} and s the least nonsquare.
    """

    __slots__ = ("field", "terms")

    def __init__(self, field, terms: dict | None = None):
        self.field = field
        terms = {k: v for k, v in (terms or {}).items() if v}
        if isinstance(field, FiniteField):
            a = terms.get(field.one, 0)
            b = terms.get(field.nonsquare, 0)
            if set(terms) - {field.one, field.nonsquare}:
                raise GWError("noncanonical representative")
            a, b = a + b - b % 2, b % 2
            terms = {k: v for k, v in ((field.one, a), (field.nonsquare, b)) if v}
        self.terms = terms

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls, field) -> "GWElement":
        return cls(field)

    @classmethod
    def one(cls, field) -> "GWElement":
        return cls.diagonal(field, [1])

    @classmethod
    def diagonal(cls, field, units: Iterable) -> "GWElement":
        terms: dict = {}
        for u in units:
            r = canonical_rep(field, u)
            terms[r] = terms.get(r, 0) + 1
        return cls(field, terms)

    @classmethod
    def hyperbolic(cls, field) -> "GWElement":
        return cls.diagonal(field, [1, -1])

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "GWElement"):
        if other.field is not self.field:
            raise GWError(f"field mismatch: {self.field} vs {other.field}")

    def _coerce(self, other) -> "GWElement":
        if isinstance(other, int):
            return GWElement.one(self.field) * other
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return GWElement(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return GWElement(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return GWElement(self.field, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                r = canonical_rep(self.field, _mul_rep(self.field, a, b))
                terms[r] = terms.get(r, 0) + c * d
        return GWElement(self.field, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GWElement.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    # invariants ---------------------------------------------------------
    @property
    def rank(self) -> int:
        return sum(self.terms.values())

    def disc(self):
        """Plain product discriminant as a canonical square-class representative."""
        if isinstance(self.field, FiniteField):
            ns = self.terms.get(self.field.nonsquare, 0)
            return self.field.nonsquare if ns % 2 else self.field.one
        d = 1
        for a, c in self.terms.items():
            if c % 2:
                d *= a
        return squarefree_part(d)

    def signature(self) -> int:
        if isinstance(self.field, FiniteField):
            raise GWError("signature is defined over QQ only")
        return sum(c if a > 0 else -c for a, c in self.terms.items())

    def entries(self) -> list:
        """Diagonal entries of an actual (nonnegative) form."""
        out = []
        for a, c in sorted(self.terms.items(), key=lambda it: _rep_key(self.field, it[0])):
            if c < 0:
                raise GWError("virtual element has no diagonal form")
            out.extend([a] * c)
        return out

    def invariants(self) -> dict:
        inv = {"rank": self.rank}
        if isinstance(self.field, FiniteField):
            d = self.disc()
            inv["disc"] = format_rep(d)
            inv["disc_square"] = d.is_square()
            return inv
        inv["signature"] = self.signature()
        inv["disc"] = self.disc()
        if all(c >= 0 for c in self.terms.values()):
            ents = self.entries()
            inv["hasse"] = {str(p): hasse_invariant(ents, p) for p in _support_primes(ents)}
        return inv

    def __eq__(self, other):
        if isinstance(other, int):
            other = GWElement.one(self.field) * other
        if not isinstance(other, GWElement):
            return NotImplemented
        return gw_equal(self, other)

    def __hash__(self):
        if isinstance(self.field, FiniteField):
            return hash((id(self.field), self.rank, self.disc().e))
        return hash((self.rank, self.signature(), self.disc()))

    def is_zero(self) -> bool:
        return self == 0

    def __repr__(self):
        return format_gw(self)


def canonical_rep(field, u):
    if isinstance(field, FiniteField):
        u = field(u)
        if not u:
            raise GWError("<0> is not a unit form")
        return field.one if u.is_square() else field.nonsquare
    return rat_square_class(u)


def _mul_rep(field, a, b):
    return a * b


def _rep_key(field, a):
    if isinstance(field, FiniteField):
        return a.key()
    return (abs(a), a)


def format_rep(a) -> str:
    if isinstance(a, FieldElement):
        from .fields import format_element
        return format_element(a)
    return str(a)


def _support_primes(*entry_lists) -> list:
    ps = {2}
    for ents in entry_lists:
        for a in ents:
            if abs(a) > 1:
                ps.update(prime_factors(abs(a)))
    return sorted(ps) + ["inf"]


def gw_from_diagonal(field, units: Iterable) -> GWElement:
    return GWElement.diagonal(field, units)


def gw_equal(a: GWElement, b: GWElement) -> bool:
    a._check(b)
    if isinstance(a.field, FiniteField):
        return a.rank == b.rank and a.disc() == b.disc()
    pos_a = {k: v for k, v in a.terms.items() if v > 0}
    neg_a = {k: -v for k, v in a.terms.items() if v < 0}
    pos_b = {k: v for k, v in b.terms.items() if v > 0}
    neg_b = {k: -v for k, v in b.terms.items() if v < 0}
    left = GWElement(QQ, pos_a) + GWElement(QQ, neg_b)
    right = GWElement(QQ, pos_b) + GWElement(QQ, neg_a)
    if (left.rank, left.signature(), left.disc()) != (right.rank, right.signature(), right.disc()):
        return False
    el, er = left.entries(), right.entries()
    return all(hasse_invariant(el, p) == hasse_invariant(er, p) for p in _support_primes(el, er))


def format_gw(a: GWElement) -> str:
    F = a.field
    parts = []
    if all(c >= 0 for c in a.terms.values()):
        ents = a.entries()
        s = "<" + ",".join(format_rep(e) for e in ents) + ">" if ents else "0"
    else:
        for r, c in sorted(a.terms.items(), key=lambda it: _rep_key(F, it[0])):
            parts.append(f"{c}<{format_rep(r)}>")
        s = " + ".join(parts)
    return s


def describe_gw(a: GWElement) -> str:
    """Short name when the element is a multiple of h or of <1>."""
    h = GWElement.hyperbolic(a.field)
    if a.rank % 2 == 0 and a == h * (a.rank // 2):
        n = a.rank // 2
        return "0" if n == 0 else ("h" if n == 1 else f"{n}h")
    if a == GWElement.one(a.field) * a.rank:
        return str(a.rank)
    return format_gw(a)


def n_epsilon(field, n: int) -> GWElement:
    """sum_{i=1}^{n} <-1>^{i-1}; for negative n, -<-1> (-n)_eps."""
    if n < 0:
        return -(GWElement.diagonal(field, [-1]) * n_epsilon(field, -n))
    return GWElement.diagonal(field, [(-1) ** i for i in range(n)])


# -- Witt ring of a finite field ---------------------------------------------

class WittElement:
    """Class in W(F_q) = GW(F_q)/(h): dimension parity and signed discriminant."""

    __slots__ = ("field", "dim_parity", "disc_bit")

    def __init__(self, field: FiniteField, dim_parity: int, disc_bit: int):
        self.field = field
        self.dim_parity = dim_parity % 2
        self.disc_bit = disc_bit % 2

    def lift(self) -> GWElement:
        """A GW representative of rank 0 or 1."""
        F = self.field
        if self.dim_parity == 0:
            if not self.disc_bit:
                return GWElement.zero(F)
            return GWElement.diagonal(F, [F.nonsquare]) - GWElement.one(F)
        return GWElement.diagonal(F, [F.nonsquare if self.disc_bit else 1])

    def __add__(self, other):
        return witt_project(self.lift() + other.lift())

    def __neg__(self):
        return witt_project(-self.lift())

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return witt_project(self.lift() * other)
        return witt_project(self.lift() * other.lift())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, WittElement):
            return NotImplemented
        return (self.field is other.field and self.dim_parity == other.dim_parity
                and self.disc_bit == other.disc_bit)

    def __hash__(self):
        return hash((id(self.field), self.dim_parity, self.disc_bit))

    def is_zero(self) -> bool:
        return self.dim_parity == 0 and self.disc_bit == 0

    def additive_order(self) -> int:
        n, acc = 1, self
        while not acc.is_zero():
            acc = acc + self
            n += 1
        return n

    def __repr__(self):
        return f"W(dim={self.dim_parity}, disc={'nonsquare' if self.disc_bit else 'square'})"


def witt_project(a: GWElement) -> WittElement:
    F = a.field
    if not isinstance(F, FiniteField):
        raise GWError("Witt projection is implemented for finite fields only")
    r = a.rank
    bit = 0 if a.disc().is_square() else 1
    # signed discriminant: multiply by (-1)^(r(r-1)/2)
    if (r % 4) in (2, 3) and not F.minus_one_is_square():
        bit ^= 1
    return WittElement(F, r % 2, bit)


# -- Gram matrices -----------------------------------------------------------

def diagonalize_gram(M: Sequence[Sequence]) -> list:
    """Diagonal entries of a congruent diagonal matrix (symmetric elimination)."""
    n = len(M)
    A = [list(row) for row in M]
    for i in range(n):
        for j in range(n):
            if A[i][j] != A[j][i]:
                raise GWError("matrix is not symmetric")
    out = []
    for i in range(n):
        if A[i][i] == 0:
            j = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[i], A[j] = A[j], A[i]
                for row in A:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if j is None:
                    raise GWError("degenerate matrix")
                # replace e_i by e_i + e_j
                for c in range(n):
                    A[i][c] = A[i][c] + A[j][c]
                for r in range(n):
                    A[r][i] = A[r][i] + A[r][j]
        piv = A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / piv
            if f != 0:
                for c in range(n):
                    A[r][c] = A[r][c] - f * A[i][c]
                for c in range(n):
                    A[c][r] = A[c][r] - f * A[c][i]
        out.append(piv)
    return out


# -- extensions of Q ---------------------------------------------------------

class QExtension:
    """Q(x) = Q[t]/(f) for a monic irreducible f with rational coefficients."""

    def __init__(self, min_poly: Sequence):
        f = [Fraction(c) for c in min_poly]
        if f[-1] != 1:
            raise GWError("minimal polynomial must be monic")
        self.min_poly = f
        self.d = len(f) - 1

    def reduce(self, a: Sequence) -> list[Fraction]:
        a = [Fraction(c) for c in a]
        d = self.d
        while len(a) > d:
            c = a.pop()
            for i in range(d):
                a[len(a) - d + i] -= c * self.min_poly[i]
        return a + [Fraction(0)] * (d - len(a))

    def mul(self, a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return self.reduce(out)

    def power(self, i: int):
        return self.reduce([0] * i + [1])

    def _mult_matrix(self, a):
        cols = [self.mul(a, self.power(j)) for j in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def trace(self, a) -> Fraction:
        M = self._mult_matrix(self.reduce(a))
        return sum(M[i][i] for i in range(self.d))

    def norm(self, a) -> Fraction:
        M = self._mult_matrix(self.reduce(a))
        return _det(M)

    def coefficient_form(self, a) -> Fraction:
        """Coefficient of x^(d-1); equals Tr(a / f'(x))."""
        return self.reduce(a)[self.d - 1]


def _det(M) -> Fraction:
    A = [list(r) for r in M]
    n = len(A)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det *= A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / A[i][i]
            for c in range(i, n):
                A[r][c] -= f * A[i][c]
    return det


def _scharlau(ext, e: GWElement, form) -> GWElement:
    """Transfer of a diagonal form along ``ext`` using an E-linear functional."""
    if isinstance(ext, QExtension):
        if e.field is not QQ:
            raise GWError("form must live over QQ")
        base = QQ
        d = ext.d
        powers = [ext.power(i) for i in range(2 * d - 1)]
        total = GWElement.zero(QQ)
        for b, c in e.terms.items():
            G = [[form(ext, ext.mul([Fraction(b)], powers[i + j])) for j in range(d)] for i in range(d)]
            total = total + GWElement.diagonal(QQ, diagonalize_gram(G)) * c
        return total
    if not isinstance(ext, Extension):
        raise GWError("unsupported extension")
    if e.field is not ext.top:
        raise GWError("form must live over the top field")
    base, d, x = ext.base, ext.d, ext.gen
    total = GWElement.zero(base)
    for b, c in e.terms.items():
        G = [[form(ext, b * x ** (i + j)) for j in range(d)] for i in range(d)]
        total = total + GWElement.diagonal(base, diagonalize_gram(G)) * c
    return total


def _trace(ext, a):
    if isinstance(ext, QExtension):
        return ext.trace(a)
    from .fields import norm_and_trace
    return norm_and_trace(ext, a)[1]


def _coefficient(ext, a):
    if isinstance(ext, QExtension):
        return ext.coefficient_form(a)
    return ext.coordinates(a)[ext.d - 1]


def trace_form_transfer(ext, e: GWElement) -> GWElement:
    """Class of (u, v) -> Tr(b u v), summed over the diagonal entries b of e."""
    return _scharlau(ext, e, _trace)


def euler_form_transfer(ext, e: GWElement) -> GWElement:
    """Transfer along the functional sending x^(d-1) to 1 and lower powers to 0."""
    return _scharlau(ext, e, _coefficient)


def nilpotent_exponent(a: GWElement, bound: int = 8) -> int:
    if a.rank != 0:
        raise GWError("only rank-zero elements are nilpotent")
    acc = a
    for n in range(1, bound + 1):
        if acc.is_zero():
            return n
        acc = acc * a
    raise GWError(f"no nilpotency exponent up to {bound}")
