"""Exact arithmetic over odd-characteristic finite fields.

A field F_{p^k} is F_p[z]/(m) where m is the lexicographically least monic
irreducible polynomial of degree k.  Nonzero elements are stored as discrete
logarithms with respect to a primitive element; addition goes through a Zech
logarithm table.  Tables are built lazily the first time a field is used.

Polynomials are coefficient lists, lowest degree first.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from typing import Iterable, Sequence

DEFAULT_BOUND = 10**6


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = 3
    while r * r <= n:
        if n % r == 0:
            return False
        r += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    r = 2
    while r * r <= n:
        if n % r == 0:
            out.append(r)
            while n % r == 0:
                n //= r
        r += 1
    if n > 1:
        out.append(n)
    return out


# -- raw polynomials over F_p (lists of ints), used before a field exists ----

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible_fp(m: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    k = len(m) - 1
    if k == 1:
        return True
    x = [0, 1]
    if _psub(_ppowmod(x, p**k, m, p), x, p):
        return False
    for r in prime_factors(k):
        h = _psub(_ppowmod(x, p ** (k // r), m, p), x, p)
        if len(_pgcd(m, h, p)) != 1:
            return False
    return True


# -- fields ------------------------------------------------------------------

class FiniteField:
    """Descriptor of F_{p^k}; obtain instances through :func:`make_field`."""

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._tables = None

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __str__(self):
        return f"GF({self.q})"

    def __reduce__(self):
        return (make_field, (self.p, self.k))

    # tables: exp[i] = coefficient tuple of g^i, log maps tuple -> i,
    # zech[i] = log(1 + g^i) or -1 when 1 + g^i = 0.
    def _build(self):
        p, k, q = self.p, self.k, self.q
        m = list(self.modulus)
        n = q - 1
        factors = prime_factors(n) if n > 1 else []
        gen = None
        for cand in itertools.product(range(p), repeat=k):
            g = _trim(list(reversed(cand)))
            if not g:
                continue
            if all(_ppowmod(g, n // r, m, p) != [1] for r in factors):
                gen = g
                break
        exp = []
        log = {}
        cur = [1]
        for i in range(n):
            t = tuple(cur) + (0,) * (k - len(cur))
            exp.append(t)
            log[t] = i
            cur = _pmod(_pmul(cur, gen, p), m, p)
        zech = [-1] * n
        for i, t in enumerate(exp):
            s = ((t[0] + 1) % p,) + t[1:]
            zech[i] = log.get(s, -1)
        self._tables = (exp, log, zech)

    @property
    def tables(self):
        if self._tables is None:
            self._build()
        return self._tables

    @property
    def order(self) -> int:
        return self.q - 1

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            return self.from_coeffs((value % self.p,))
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Iterable[int]) -> "FieldElement":
        c = [x % self.p for x in coeffs]
        if len(c) > self.k:
            c = _pmod(c, self.modulus, self.p)
        t = tuple(c) + (0,) * (self.k - len(c))
        if not any(t):
            return FieldElement(self, -1)
        return FieldElement(self, self.tables[1][t])

    @functools.cached_property
    def zero(self) -> "FieldElement":
        return FieldElement(self, -1)

    @functools.cached_property
    def one(self) -> "FieldElement":
        return FieldElement(self, 0)

    @functools.cached_property
    def primitive(self) -> "FieldElement":
        return FieldElement(self, 1 % self.order) if self.order > 1 else self.one

    @functools.cached_property
    def z(self) -> "FieldElement":
        """Class of the indeterminate modulo the modulus."""
        return self.from_coeffs((0, 1)) if self.k > 1 else self(-self.modulus[0])

    @functools.cached_property
    def nonsquare(self) -> "FieldElement":
        """Least nonsquare in coefficient order."""
        return min((a for a in self.units() if not a.is_square()), key=FieldElement.key)

    def units(self):
        return (FieldElement(self, i) for i in range(self.order))

    def elements(self):
        yield self.zero
        yield from self.units()

    def minus_one_is_square(self) -> bool:
        return self.q % 4 == 1


class FieldElement:
    __slots__ = ("field", "e")

    def __init__(self, field: FiniteField, e: int):
        self.field = field
        self.e = e  # discrete log, -1 for zero

    @property
    def coeffs(self) -> tuple[int, ...]:
        if self.e < 0:
            return (0,) * self.field.k
        return self.field.tables[0][self.e]

    def key(self):
        return self.coeffs

    def __repr__(self):
        return format_element(self)

    def __hash__(self):
        return hash((id(self.field), self.e))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.e == other.e

    def __bool__(self):
        return self.e >= 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field(other)
        if other.field is not self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if self.e < 0:
            return other
        if other.e < 0:
            return self
        n = self.field.order
        z = self.field.tables[2][(other.e - self.e) % n]
        if z < 0:
            return self.field.zero
        return FieldElement(self.field, (self.e + z) % n)

    __radd__ = __add__

    def __neg__(self):
        if self.e < 0:
            return self
        n = self.field.order
        return FieldElement(self.field, (self.e + n // 2) % n)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.e < 0 or other.e < 0:
            return self.field.zero
        return FieldElement(self.field, (self.e + other.e) % self.field.order)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.e < 0:
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, (-self.e) % self.field.order)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return self.field.one
        if self.e < 0:
            if n < 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return self
        return FieldElement(self.field, (self.e * n) % self.field.order)

    def is_square(self) -> bool:
        if self.e < 0:
            raise FieldError("square class of zero")
        return self.e % 2 == 0

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def sqrt(self) -> "FieldElement":
        if not self.is_square():
            raise FieldError("not a square")
        return self if self.e < 0 else FieldElement(self.field, self.e // 2)


def format_element(a: FieldElement) -> str:
    """Coefficient vector in the modulus basis, e.g. ``[1,1]`` for z+1."""
    c = a.coeffs
    if a.field.k == 1:
        return str(c[0])
    return "[" + ",".join(map(str, c)) + "]"


def square_class(a: FieldElement) -> int:
    """0 for a square, 1 for a nonsquare (F_q^x / squares is Z/2)."""
    return 0 if a.is_square() else 1


@functools.lru_cache(maxsize=None)
def _field(p: int, k: int) -> FiniteField:
    for cand in itertools.product(range(p), repeat=k):
        m = list(reversed(cand)) + [1]
        if _is_irreducible_fp(m, p):
            return FiniteField(p, k, tuple(m))
    raise AssertionError("no irreducible polynomial found")


def make_field(p: int, k: int = 1, bound: int = DEFAULT_BOUND) -> FiniteField:
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is unsupported")
    if k < 1:
        raise FieldError("extension degree must be positive")
    if p**k > bound:
        raise FieldError(f"field size {p}^{k} exceeds bound {bound}")
    return _field(p, k)


def field_of_order(q: int, bound: int = DEFAULT_BOUND) -> FiniteField:
    fs = prime_factors(q)
    if len(fs) != 1:
        raise FieldError(f"{q} is not a prime power")
    p = fs[0]
    k = round(math.log(q, p))
    if p**k != q:
        raise FieldError(f"{q} is not a prime power")
    return make_field(p, k, bound)


# -- polynomials over a finite field ----------------------------------------

class Poly:
    """Univariate polynomial over a :class:`FiniteField`; coefficients low to high."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: Iterable = ()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FiniteField, c) -> "Poly":
        return cls(field, (c,))

    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self) -> bool:
        return self.deg == 0 and self.coeffs[0] == self.field.one

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lc == self.field.one

    def key(self):
        return (self.deg, tuple(c.key() for c in reversed(self.coeffs)))

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return format_poly(self)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldError("polynomials over different fields")
            return other
        return Poly(self.field, (other,))

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = self.field.zero
        return Poly(self.field, [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Poly(self.field, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = other.deg
        inv = other.lc.inverse()
        q = [self.field.zero] * max(len(r) - d, 0)
        while len(r) - 1 >= d and r:
            c = r[-1] * inv
            shift = len(r) - 1 - d
            q[shift] = c
            for i, y in enumerate(other.coeffs):
                r[shift + i] = r[shift + i] - c * y
            while r and not r[-1]:
                r.pop()
        return Poly(self.field, q), Poly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if not self:
            raise FieldError("zero polynomial has no monic form")
        inv = self.lc.inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def scale(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self.field, [x * c for x in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; ``x`` may live in a field reached through ``hom``."""
        acc = x.field.zero if isinstance(x, FieldElement) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def evaluate(self, x: FieldElement, hom=None) -> FieldElement:
        acc = x.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + (hom(c) if hom is not None else c)
        return acc

    def map(self, hom) -> "Poly":
        return Poly(hom.dst, [hom(c) for c in self.coeffs])

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly(self.field, (1,))
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def compose(self, other: "Poly") -> "Poly":
        acc = Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def format_poly(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    parts = []
    for i in range(f.deg, -1, -1):
        c = f.coeffs[i]
        if not c:
            continue
        cs = format_element(c)
        if i == 0:
            parts.append(cs)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            parts.append(mon if c == f.field.one else f"{cs}*{mon}")
    return "+".join(parts)


def _pth_root(f: Poly) -> Poly:
    F = f.field
    p = F.p
    e = p ** (F.k - 1)
    return Poly(F, [f.coeffs[i] ** e for i in range(0, len(f.coeffs), p)])


def _squarefree(f: Poly) -> list[tuple[Poly, int]]:
    out = []
    p = f.field.p
    fp = f.derivative()
    if not fp:
        return [(g, m * p) for g, m in _squarefree(_pth_root(f))]
    c = poly_gcd(f, fp)
    w = f // c
    i = 1
    while w.deg > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.deg > 0:
            out.append((z.monic(), i))
        i += 1
        w = y
        c = c // y
    if c.deg > 0:
        out.extend((g, m * p) for g, m in _squarefree(_pth_root(c.monic())))
    return out


def _distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    q = f.field.q
    x = Poly.x(f.field)
    out = []
    h = x % f
    i = 1
    while f.deg >= 2 * i:
        h = h.powmod(q, f)
        g = poly_gcd(f, h - x)
        if g.deg > 0:
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.deg > 0:
        out.append((f.monic(), f.deg))
    return out


def _equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    if f.deg == d:
        return [f]
    F = f.field
    e = (F.q**d - 1) // 2
    while True:
        a = Poly(F, [FieldElement(F, rng.randrange(-1, F.order)) for _ in range(f.deg)])
        if a.deg < 1:
            continue
        g = poly_gcd(f, a)
        if 0 < g.deg < f.deg:
            break
        b = a.powmod(e, f) - 1
        g = poly_gcd(f, b) if b else b
        if g and 0 < g.deg < f.deg:
            break
    return _equal_degree(g, d, rng) + _equal_degree((f // g).monic(), d, rng)


@functools.lru_cache(maxsize=4096)
def _factor_monic(f: Poly) -> tuple[tuple[Poly, int], ...]:
    rng = random.Random(hash(f.key()))
    counts: dict[Poly, int] = {}
    for g, m in _squarefree(f):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h.monic(), d, rng):
                counts[irr] = counts.get(irr, 0) + m
    return tuple(sorted(counts.items(), key=lambda it: it[0].key()))


def factor(f: Poly) -> tuple[list[tuple[Poly, int]], FieldElement]:
    """Factor into sorted monic irreducibles with multiplicities, plus the leading coefficient."""
    if not f:
        raise FieldError("cannot factor the zero polynomial")
    lc = f.lc
    if f.deg == 0:
        return [], lc
    return list(_factor_monic(f.monic())), lc


def is_irreducible(f: Poly) -> bool:
    if f.deg < 1:
        return False
    fs, _ = factor(f)
    return len(fs) == 1 and fs[0][1] == 1


def roots(f: Poly) -> list[FieldElement]:
    fs, _ = factor(f)
    return sorted((-g.coeffs[0] for g, _ in fs if g.deg == 1), key=FieldElement.key)


def tensor_split(d: int, r: int) -> list[tuple[int, int]]:
    """Components of F_{q^d} (x) F_{q^r}: gcd(d, r) copies of F_{q^lcm(d, r)}."""
    if d < 1 or r < 1:
        raise FieldError("degrees must be positive")
    g = math.gcd(d, r)
    return [(d * r // g, g)]


# -- homomorphisms and extensions -------------------------------------------

class FieldHom:
    """Embedding src -> dst fixed by the image of src's primitive element."""

    __slots__ = ("src", "dst", "_img_log", "__weakref__")

    def __init__(self, src: FiniteField, dst: FiniteField, image_of_z: FieldElement | None = None,
                 image_of_primitive: FieldElement | None = None):
        if src.p != dst.p or dst.k % src.k:
            raise FieldError(f"no embedding {src} -> {dst}")
        self.src = src
        self.dst = dst
        if image_of_primitive is None:
            g = src.primitive.coeffs
            if src.k == 1:
                image_of_primitive = dst(g[0])
            else:
                acc = dst.zero
                for c in reversed(g):
                    acc = acc * image_of_z + c
                image_of_primitive = acc
        self._img_log = image_of_primitive.e

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field is not self.src:
            raise FieldError(f"{a!r} is not in {self.src}")
        if a.e < 0:
            return self.dst.zero
        return FieldElement(self.dst, (self._img_log * a.e) % self.dst.order)

    def compose(self, first: "FieldHom") -> "FieldHom":
        """self o first."""
        return FieldHom(first.src, self.dst, image_of_primitive=self(first(first.src.primitive)))

    def preimage(self, b: FieldElement) -> FieldElement:
        """Inverse on the image; raises if ``b`` is not in the image."""
        if b.field is not self.dst:
            raise FieldError("element not in codomain")
        if b.e < 0:
            return self.src.zero
        n_src, n_dst = self.src.order, self.dst.order
        c = n_dst // n_src
        if b.e % c:
            raise FieldError("element is not in the image")
        m = (self._img_log // c) % n_src
        l = (b.e // c) % n_src
        return FieldElement(self.src, (l * pow(m, -1, n_src)) % n_src)

    def in_image(self, b: FieldElement) -> bool:
        return b.e < 0 or b.e % (self.dst.order // self.src.order) == 0

    def key(self):
        return (self.src.q, self.dst.q, self._img_log)

    def __eq__(self, other):
        return isinstance(other, FieldHom) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def identity_hom(F: FiniteField) -> FieldHom:
    return FieldHom(F, F, image_of_primitive=F.primitive)


@functools.lru_cache(maxsize=None)
def canonical_embedding(E: FiniteField, F: FiniteField) -> FieldHom:
    """Identity when E is F, else the embedding sending z_E to the least root of its modulus."""
    if E is F:
        return identity_hom(F)
    if E.k == 1:
        return FieldHom(E, F, image_of_primitive=F(E.primitive.coeffs[0]))
    m = Poly(F, E.modulus)
    r = roots(m)
    if not r:
        raise FieldError(f"{E} does not embed in {F}")
    return FieldHom(E, F, image_of_z=r[0])


def _solve_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of a square matrix over F_p (Gauss-Jordan)."""
    n = len(rows)
    a = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] % p)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


class Extension:
    """A monogenic extension top = base(gen), with base embedded through ``emb``."""

    def __init__(self, base: FiniteField, top: FiniteField, emb: FieldHom, gen: FieldElement,
                 min_poly: Poly | None = None):
        if emb.src is not base or emb.dst is not top or gen.field is not top:
            raise FieldError("inconsistent extension data")
        self.base = base
        self.top = top
        self.emb = emb
        self.gen = gen
        self.d = top.k // base.k
        if min_poly is None:
            min_poly = _min_poly(emb, gen)
        if min_poly.deg != self.d:
            raise FieldError(f"{gen!r} does not generate {top} over {base}")
        if min_poly.evaluate(gen, emb):
            raise FieldError("minimal polynomial does not vanish at the generator")
        self.min_poly = min_poly

    def __repr__(self):
        return f"{self.top}/{self.base} by {format_poly(self.min_poly)}"

    def key(self):
        return (self.base.q, self.top.q, self.emb.key(), self.gen.e)

    def __eq__(self, other):
        return isinstance(other, Extension) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @functools.cached_property
    def _coord_matrix(self):
        p = self.base.p
        zb = self.emb(self.base.z)
        cols = []
        for i in range(self.d):
            xi = self.gen ** i
            for j in range(self.base.k):
                cols.append((xi * zb**j).coeffs)
        n = self.top.k
        rows = [[cols[c][r] for c in range(n)] for r in range(n)]
        return _solve_mod_p(rows, p)

    def coordinates(self, a: FieldElement) -> list[FieldElement]:
        """Coefficients c_i in base with a = sum c_i gen^i."""
        inv = self._coord_matrix
        p = self.base.p
        v = a.coeffs
        sol = [sum(r * x for r, x in zip(row, v)) % p for row in inv]
        kb = self.base.k
        return [self.base.from_coeffs(sol[i * kb:(i + 1) * kb]) for i in range(self.d)]

    def as_poly(self, a: FieldElement) -> Poly:
        return Poly(self.base, self.coordinates(a))

    def pullback(self, a: FieldElement) -> FieldElement:
        return self.emb.preimage(a)

    def derivative_at_gen(self) -> FieldElement:
        return self.min_poly.derivative().evaluate(self.gen, self.emb)


def _min_poly(emb: FieldHom, a: FieldElement) -> Poly:
    qb = emb.src.q
    conj = [a]
    c = a ** qb
    while c != a:
        conj.append(c)
        c = c ** qb
    top = emb.dst
    f = Poly(top, (1,))
    for c in conj:
        f = f * Poly(top, (-c, 1))
    return Poly(emb.src, [emb.preimage(c) for c in f.coeffs])


def min_poly(ext: Extension, a: FieldElement) -> Poly:
    return _min_poly(ext.emb, a)


def norm_and_trace(ext: Extension, a: FieldElement) -> tuple[FieldElement, FieldElement]:
    qb = ext.base.q
    n, t = ext.top.one, ext.top.zero
    c = a
    for _ in range(ext.d):
        n = n * c
        t = t + c
        c = c ** qb
    return ext.pullback(n), ext.pullback(t)


@functools.lru_cache(maxsize=None)
def simple_extension(base: FiniteField, f: Poly) -> Extension:
    """base[t]/(f) realized inside F_{p^(k deg f)}, generator the least root."""
    if f.field is not base or not is_irreducible(f):
        raise FieldError(f"{f} is not irreducible over {base}")
    top = _field(base.p, base.k * f.deg)
    emb = canonical_embedding(base, top)
    r = roots(f.map(emb))
    return Extension(base, top, emb, r[0], f.monic())


def subfield_extension(base: FiniteField, top: FiniteField, gen: FieldElement | None = None) -> Extension:
    """top over base with both canonically embedded; default generator is z_top."""
    emb = canonical_embedding(base, top)
    return Extension(base, top, emb, gen if gen is not None else top.z)


def irreducibles(F: FiniteField, degree: int):
    """Monic irreducible polynomials of a given degree, in increasing key order."""
    elems = sorted(F.elements(), key=FieldElement.key)
    for cand in itertools.product(elems, repeat=degree):
        f = Poly(F, list(reversed(cand)) + [F.one])
        if is_irreducible(f):
            yield f
