"""Exact scalar arithmetic in the real quadratic field Q(sqrt2, sqrt3).

Every structure constant, bilinear-form entry and invariant-polynomial
coefficient appearing in the two SU(3) bases lives in Q(sqrt3); a handful of
root-vector normalizations additionally need sqrt2, so we work in the degree-4
extension Q(sqrt2, sqrt3) with basis (1, sqrt2, sqrt3, sqrt6).  Elements are
quadruples of ``fractions.Fraction`` and all ring operations are exact.

Division is exact field division, implemented by solving the 4x4 linear
system c * x = 1 over Q (rationalization).
"""

from __future__ import annotations

from fractions import Fraction
import math

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


class Scalar:
    """An element a + b*sqrt2 + c*sqrt3 + d*sqrt6 with a,b,c,d rational."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b if isinstance(b, Fraction) else Fraction(b)
        self.c = c if isinstance(c, Fraction) else Fraction(c)
        self.d = d if isinstance(d, Fraction) else Fraction(d)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def of(x):
        """Coerce an int, Fraction or Scalar to a Scalar."""
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @staticmethod
    def sqrt3(coeff=1):
        return Scalar(0, 0, coeff, 0)

    @staticmethod
    def sqrt2(coeff=1):
        return Scalar(0, coeff, 0, 0)

    @staticmethod
    def sqrt6(coeff=1):
        return Scalar(0, 0, 0, coeff)

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, Scalar)):
            return NotImplemented
        other = Scalar.of(other)
        return Scalar(self.a + other.a, self.b + other.b,
                      self.c + other.c, self.d + other.d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, Scalar)):
            return NotImplemented
        return self + (-Scalar.of(other))

    def __rsub__(self, other):
        return Scalar.of(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, Scalar)):
            return NotImplemented
        other = Scalar.of(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        # (1,s2,s3,s6) multiplication table: s2*s3 = s6, s2*s6 = 2*s3, ...
        return Scalar(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def inv(self):
        """Multiplicative inverse, via the conjugate product.

        With s(x) = a - b*sqrt2 + c*sqrt3 - d*sqrt6 and
        t(x) = a + b*sqrt2 - c*sqrt3 - d*sqrt6, the product
        x * s(x) * t(x) * s(t(x)) is the rational field norm.
        """
        if self.is_zero():
            raise ZeroDivisionError("Scalar division by zero")
        s = Scalar(self.a, -self.b, self.c, -self.d)
        t = Scalar(self.a, self.b, -self.c, -self.d)
        st = Scalar(self.a, -self.b, -self.c, self.d)
        num = s * t * st
        norm = (self * num).a  # rational by construction
        return Scalar(num.a / norm, num.b / norm, num.c / norm, num.d / norm)

    def __truediv__(self, other):
        return self * Scalar.of(other).inv()

    def __rtruediv__(self, other):
        return Scalar.of(other) * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Scalar powers must be nonnegative integers")
        out = Scalar(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates / views -------------------------------------------------

    def is_zero(self):
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self):
        return not (self.b or self.c or self.d)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return (self.a == other.a and self.b == other.b
                and self.c == other.c and self.d == other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __float__(self):
        return (float(self.a) + float(self.b) * _SQRT2
                + float(self.c) * _SQRT3 + float(self.d) * _SQRT6)

    # -- canonical text form -------------------------------------------------

    def text(self):
        """Canonical serialization, bit-exact round-trip via parse_scalar.

        Rational values print as "p/q"; values with irrational parts print
        as "(p/q)+(r/s)√3", extended with √2/√6 terms only when nonzero.
        """
        if self.is_rational():
            return str(self.a)
        parts = [f"({self.a})"]
        for coeff, tag in ((self.b, "√2"), (self.c, "√3"), (self.d, "√6")):
            if coeff:
                parts.append(f"({coeff}){tag}")
        return "+".join(parts)

    def __repr__(self):
        return f"Scalar({self.text()})"


def parse_scalar(s):
    """Inverse of Scalar.text()."""
    s = s.strip()
    if "(" not in s:
        return Scalar(Fraction(s))
    out = Scalar(0)
    # split on '+' that separate "(..)tag" chunks; coefficients may be negative
    for chunk in s.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.endswith("√2"):
            out = out + Scalar.sqrt2(Fraction(chunk[1:-3]))
        elif chunk.endswith("√3"):
            out = out + Scalar.sqrt3(Fraction(chunk[1:-3]))
        elif chunk.endswith("√6"):
            out = out + Scalar.sqrt6(Fraction(chunk[1:-3]))
        else:
            out = out + Scalar(Fraction(chunk.strip("()")))
    return out


ZERO = Scalar(0)
ONE = Scalar(1)
HALF = Scalar(Fraction(1, 2))
SQRT3 = Scalar.sqrt3()


class CScalar:
    """Exact complex number with Scalar real and imaginary parts.

    Used for exact 3x3 matrix representations of su(3) basis elements and
    for exact complex root coordinates z_k.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Scalar) else Scalar.of(re)
        self.im = im if isinstance(im, Scalar) else Scalar.of(im)

    @staticmethod
    def of(x):
        if isinstance(x, CScalar):
            return x
        if isinstance(x, (int, Fraction, Scalar)):
            return CScalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CScalar")

    @staticmethod
    def i(coeff=1):
        return CScalar(0, coeff)

    def __add__(self, other):
        other = CScalar.of(other)
        return CScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return CScalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-CScalar.of(other))

    def __rsub__(self, other):
        return CScalar.of(other) + (-self)

    def __mul__(self, other):
        other = CScalar.of(other)
        return CScalar(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self):
        return CScalar(self.re, -self.im)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = CScalar.of(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CScalar({self.re.text()}, {self.im.text()})"


def cmat(entries):
    """Build an exact matrix (tuple of tuples of CScalar) from a nested list."""
    return tuple(tuple(CScalar.of(x) for x in row) for row in entries)


def cmat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum((A[i][k] * B[k][j] for k in range(m)), CScalar(0))
              for j in range(p))
        for i in range(n))


def cmat_add(A, B):
    return tuple(tuple(A[i][j] + B[i][j] for j in range(len(A[0])))
                 for i in range(len(A)))


def cmat_scale(c, A):
    c = CScalar.of(c)
    return tuple(tuple(c * x for x in row) for row in A)


def cmat_sub(A, B):
    return cmat_add(A, cmat_scale(CScalar(-1), B))


def cmat_commutator(A, B):
    return cmat_sub(cmat_mul(A, B), cmat_mul(B, A))


def cmat_trace(A):
    return sum((A[i][i] for i in range(len(A))), CScalar(0))


def cmat_is_zero(A):
    return all(x.is_zero() for row in A for x in row)
