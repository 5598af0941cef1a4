"""Independent reference computations used by the tests.

Nothing here goes through the log/Zech tables or the residue machinery of the
package: field arithmetic is schoolbook polynomial arithmetic modulo the
modulus, isometry is decided by brute force, and residues of degree-2 symbols
are compared against the classical tame symbol.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


# -- schoolbook F_p[z]/(m) ------------------------------------------------------

def pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return trim(out)


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def pmod(a, m, p):
    a = trim(a)
    inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv % p
        s = len(a) - len(m)
        for i, x in enumerate(m):
            a[s + i] = (a[s + i] - c * x) % p
        a = trim(a)
    return a


class Naive:
    """F_p[z]/(m) with elements as coefficient tuples of length k."""

    def __init__(self, p, modulus):
        self.p = p
        self.m = list(modulus)
        self.k = len(modulus) - 1

    def norm(self, a):
        a = pmod(list(a), self.m, self.p)
        return tuple(a) + (0,) * (self.k - len(a))

    def mul(self, a, b):
        return self.norm(pmul(trim(a), trim(b), self.p))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def power(self, a, n):
        out = self.norm([1])
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def elements(self):
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.k)]

    def is_zero(self, a):
        return not any(a)

    def is_square(self, a):
        return any(self.mul(b, b) == a for b in self.elements())


def poly_irreducible_bruteforce(coeffs, p):
    """Irreducibility over F_p by trial division with all monic polys of lower degree."""
    f = trim(coeffs)
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not pmod(f, g, p):
                return False
    return True


def roots_bruteforce(coeffs, p):
    return [a for a in range(p) if sum(c * pow(a, i, p) for i, c in enumerate(coeffs)) % p == 0]


# -- quadratic forms --------------------------------------------------------------

def isometric_bruteforce(a, b, p):
    """Diagonal forms over F_p of equal rank are isometric iff a change of basis exists (rank <= 2)."""
    n = len(a)
    if n != len(b):
        return False
    vecs = [v for v in itertools.product(range(p), repeat=n) if any(v)]

    def q(form, v):
        return sum(c * x * x for c, x in zip(form, v)) % p

    def bil(form, v, w):
        return sum(c * x * y for c, x, y in zip(form, v, w)) % p

    # find images of the standard basis vectors representing b's entries, pairwise orthogonal, independent
    for images in itertools.product(vecs, repeat=n):
        if all(q(a, images[i]) == b[i] % p for i in range(n)) and \
                all(bil(a, images[i], images[j]) == 0 for i in range(n) for j in range(i + 1, n)):
            if _independent(images, p):
                return True
    return False


def _independent(vs, p):
    rows = [list(v) for v in vs]
    n = len(rows)
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, n) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r == n


def hilbert_bruteforce(a: int, b: int, p: int, k: int = 3) -> int:
    """(a,b)_p by searching for a nontrivial primitive solution of z^2 = a x^2 + b y^2 mod p^k."""
    mod = p ** k
    for x, y, z in itertools.product(range(mod), repeat=3):
        if (x % p or y % p or z % p) and (z * z - a * x * x - b * y * y) % mod == 0:
            return 1
    return -1


# -- tame symbol ------------------------------------------------------------------

def tame_symbol(x, f, g):
    """(-1)^{v(f)v(g)} f^{v(g)} / g^{v(f)} reduced at the closed point x (package types, schoolbook formula).

    Uses only valuations and evaluation of polynomials at the residue class;
    independent of the uniformizer and of the residue algorithm.
    """
    a, u = x.split(f)
    b, w = x.split(g)
    # x.split reduces the unit part for a fixed uniformizer pi; the tame symbol is
    # uniformizer independent: f = u pi^a, g = w pi^b gives (-1)^{ab} u^b / w^a
    val = (u ** b) / (w ** a)
    return -val if (a * b) % 2 else val


def scharlau_gram(ext, b, functional):
    """Gram matrix of (u, v) -> functional(b u v) in the power basis."""
    d, x = ext.d, ext.gen
    return [[functional(b * x ** (i + j)) for j in range(d)] for i in range(d)]


def rational_hasse_signature(entries):
    pos = sum(1 for e in entries if Fraction(e) > 0)
    return pos - (len(entries) - pos)
