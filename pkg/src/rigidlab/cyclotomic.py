"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Values are stored as coefficient vectors in the power basis
1, z, ..., z^(phi(N)-1) with z a primitive N-th root of unity, reduced
modulo the N-th cyclotomic polynomial.  Root extraction for rational
polynomials that split in Q(zeta_N) is done by Trager's method (norm via
a resultant, rational factorization, then gcds over the field); sympy is
used only for the rational factorization and the resultant.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_phi) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be >= 1")
    # x^n - 1 divided by the cyclotomic polynomials of the proper divisors.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _polydiv_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = num[k + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[k] = q
        for j, d in enumerate(den):
            num[k + j] -= q * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _reduce_exponent_array(n: int, arr: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce sum_k arr[k] z^k (0 <= k < n) to the power basis."""
    phi = _phi(n)
    cyc = cyclotomic_polynomial(n)
    work = list(arr)
    for d in range(n - 1, phi - 1, -1):
        c = work[d]
        if c:
            work[d] = 0
            for j in range(phi):
                work[d - phi + j] -= c * cyc[j]
    return tuple(Fraction(x) for x in work[:phi])


class Cyclotomic:
    """An element of Q(zeta_N), exact."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        phi = _phi(conductor)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != phi:
            raise ValueError(f"need {phi} coefficients for conductor {conductor}")
        self.conductor = conductor
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, x, conductor: int = 1) -> "Cyclotomic":
        phi = _phi(conductor)
        coeffs = [Fraction(x)] + [Fraction(0)] * (phi - 1)
        return cls(conductor, coeffs)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        k %= n
        arr = [Fraction(0)] * n
        arr[k] = Fraction(1)
        return cls(n, _reduce_exponent_array(n, arr))

    def promote(self, m: int) -> "Cyclotomic":
        """Re-express in Q(zeta_m) for a multiple m of the conductor."""
        if m == self.conductor:
            return self
        if m % self.conductor != 0:
            raise ValueError("can only promote to a multiple of the conductor")
        step = m // self.conductor
        arr = [Fraction(0)] * m
        for j, c in enumerate(self.coeffs):
            arr[(j * step) % m] += c
        return Cyclotomic(m, _reduce_exponent_array(m, arr))

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, 1)
        if not isinstance(other, Cyclotomic):
            return None, None
        n = _lcm(self.conductor, other.conductor)
        return self.promote(n), other.promote(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return Cyclotomic(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [c * other for c in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        n = a.conductor
        arr = [Fraction(0)] * n
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    arr[(i + j) % n] += x * y
        return Cyclotomic(n, _reduce_exponent_array(n, arr))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return Cyclotomic(self.conductor, [c / other for c in self.coeffs])
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        return NotImplemented

    def galois(self, a: int) -> "Cyclotomic":
        """Apply the automorphism z -> z^a (a coprime to the conductor)."""
        n = self.conductor
        if gcd(a, n) != 1:
            raise ValueError("automorphism exponent must be coprime to the conductor")
        arr = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c:
                arr[(j * a) % n] += c
        return Cyclotomic(n, _reduce_exponent_array(n, arr))

    def conjugate(self) -> "Cyclotomic":
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    def inverse(self) -> "Cyclotomic":
        """Field inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return Cyclotomic.from_rational(1 / self.rational_value(), self.conductor)
        phi_coeffs = [Fraction(c) for c in cyclotomic_polynomial(self.conductor)]
        _, _, inv = _poly_ext_gcd(phi_coeffs, list(self.coeffs))
        _, inv = _poly_divmod_q(inv, phi_coeffs)
        return Cyclotomic(self.conductor, _pad(inv, _phi(self.conductor)))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def simplify(self):
        """Return an int/Fraction if the value is rational, else self."""
        if self.is_rational():
            v = self.rational_value()
            return v.numerator if v.denominator == 1 else v
        return self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if isinstance(other, Cyclotomic):
            a, b = self._pair(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    __hash__ = None  # equality crosses conductors; don't use as dict keys

    def sort_key(self):
        return (self.conductor, self.coeffs)

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    def __repr__(self):
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            z = "" if j == 0 else (f"z{self.conductor}" if j == 1 else f"z{self.conductor}^{j}")
            terms.append(f"{c}" if j == 0 else (f"{c}*{z}" if c != 1 else z))
        return " + ".join(terms) if terms else "0"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _pad(coeffs, length):
    return list(coeffs) + [Fraction(0)] * (length - len(coeffs))


# ---------------------------------------------------------------------------
# Polynomials over Q (coefficient lists, low degree first)

def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod_q(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _poly_trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a
    while len(_poly_trim(r)) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for j, d in enumerate(b):
            r[k + j] -= c * d
        r.pop()
    return q, r


def _poly_ext_gcd(a, b):
    """Extended gcd over Q[x]: returns (g, u, v) with u*a + v*b = g, g constant
    when a, b are coprime (normalized so g = 1)."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while _poly_trim(list(r1)):
        q, r = _poly_divmod_q(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    g = _poly_trim(list(r0))
    if len(g) != 1:
        raise ArithmeticError("inputs are not coprime")
    c = g[0]
    return [Fraction(1)], [x / c for x in s0], [x / c for x in t0]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


# ---------------------------------------------------------------------------
# Polynomials over Q(zeta_N) and Trager root extraction

def _kpoly_trim(p):
    while p and p[-1].is_zero():
        p.pop()
    return p


def _kpoly_divmod(a, b, n):
    a = list(a)
    b = _kpoly_trim(list(b))
    if not b:
        raise ZeroDivisionError
    lead_inv = b[-1].inverse()
    q = [Cyclotomic.from_rational(0, n)] * max(0, len(a) - len(b) + 1)
    r = a
    while len(_kpoly_trim(r)) >= len(b):
        k = len(r) - len(b)
        c = r[-1] * lead_inv
        q[k] = c
        for j, d in enumerate(b):
            r[k + j] = r[k + j] - c * d
        r.pop()
    return q, r


def _kpoly_gcd(a, b, n):
    a = _kpoly_trim(list(a))
    b = _kpoly_trim(list(b))
    while b:
        _, r = _kpoly_divmod(a, b, n)
        a, b = b, _kpoly_trim(r)
    if a:
        lead_inv = a[-1].inverse()
        a = [c * lead_inv for c in a]
    return a


def roots_in_cyclotomic(coeffs, n: int) -> list[Cyclotomic]:
    """All roots in Q(zeta_n) of a squarefree rational polynomial that is
    known to split completely there (coeffs low-degree-first)."""
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg < 1:
        return []
    if deg == 1:
        return [Cyclotomic.from_rational(-coeffs[0] / coeffs[1], n)]
    if _phi(n) == 1:
        # the field is Q itself; an irreducible factor of degree > 1 cannot split
        raise ArithmeticError("polynomial of degree > 1 cannot split over Q")

    x, y = sympy.symbols("x y")
    f_expr = sum(sympy.Rational(c) * x**i for i, c in enumerate(coeffs))
    phi_expr = sum(int(c) * y**i for i, c in enumerate(cyclotomic_polynomial(n)))

    for s in range(1, 40):
        norm = sympy.resultant(phi_expr, f_expr.subs(x, x - s * y), y)
        norm_poly = sympy.Poly(sympy.expand(norm), x)
        if sympy.gcd(norm_poly, norm_poly.diff(x)).degree() == 0:
            break
    else:  # pragma: no cover
        raise ArithmeticError("no squarefree shift found")

    f_k = [Cyclotomic.from_rational(c, n) for c in coeffs]
    roots = []
    _, factors = sympy.factor_list(norm_poly)
    for h_poly, _mult in factors:
        h = [Fraction(str(c)) for c in reversed(sympy.Poly(h_poly, x).all_coeffs())]
        h_shift = _kpoly_shift(h, Cyclotomic.zeta(n) * s, n)
        g = _kpoly_gcd(f_k, h_shift, n)
        if len(g) == 2:
            roots.append(-g[0])
        elif len(g) > 2:
            raise ArithmeticError("polynomial does not split into linear factors")
    if len(roots) != deg:
        raise ArithmeticError(f"expected {deg} roots, found {len(roots)}")
    return roots


def _kpoly_shift(h, c, n):
    """h(x + c) over Q(zeta_n), via Horner."""
    out = [Cyclotomic.from_rational(h[-1], n)]
    for coeff in reversed(h[:-1]):
        # out = out * (x + c) + coeff
        new = [Cyclotomic.from_rational(0, n)] * (len(out) + 1)
        for i, a in enumerate(out):
            new[i + 1] = new[i + 1] + a
            new[i] = new[i] + a * c
        new[0] = new[0] + Cyclotomic.from_rational(coeff, n)
        out = new
    return out
