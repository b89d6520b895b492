"""Vectorised double-double arithmetic.

A value is carried as an unevaluated sum ``hi + lo`` of two float64 arrays
with ``|lo| <= ulp(hi)/2``, giving roughly 32 significant digits.  Only the
operations needed by the power-series kernels are provided: addition,
multiplication and multiplication by plain floats.  Division is done once
per series index on scalars (``dd_recip``) and then applied as a product.

The error-free transformations follow Dekker and Knuth; numpy has no fused
multiply-add, so products use Veltkamp splitting.
"""

from __future__ import annotations

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


class DD:
    """Real double-double number (or array of them)."""

    __slots__ = ("hi", "lo")

    def __init__(self, hi, lo=0.0):
        self.hi = hi
        self.lo = lo

    @classmethod
    def from_product(cls, a, b):
        """Exact product of two float64 values."""
        return cls(*two_prod(a, b))

    def __neg__(self):
        return DD(-self.hi, -self.lo)

    def __add__(self, other):
        if isinstance(other, CDD):
            return other + self
        if isinstance(other, DD):
            s, e = two_sum(self.hi, other.hi)
            t, f = two_sum(self.lo, other.lo)
            e = e + t
            s, e = quick_two_sum(s, e)
            e = e + f
            return DD(*quick_two_sum(s, e))
        s, e = two_sum(self.hi, other)
        e = e + self.lo
        return DD(*quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CDD):
            return other * self
        if isinstance(other, DD):
            p, e = two_prod(self.hi, other.hi)
            e = e + (self.hi * other.lo + self.lo * other.hi)
            return DD(*quick_two_sum(p, e))
        p, e = two_prod(self.hi, other)
        e = e + self.lo * other
        return DD(*quick_two_sum(p, e))

    __rmul__ = __mul__

    def take(self, idx):
        return DD(self.hi[idx], self.lo[idx])

    def to_float(self):
        return self.hi + self.lo

    def abs_hi(self):
        return np.abs(self.hi)


def dd_recip(x: DD) -> DD:
    """Reciprocal of a double-double (scalar or array), two Newton corrections."""
    q1 = 1.0 / x.hi
    r = 1.0 - x * q1
    q2 = r.to_float() / x.hi
    r = r - x * q2
    q3 = r.to_float() / x.hi
    q = DD(*quick_two_sum(q1, q2))
    return q + q3


class CDD:
    """Complex double-double stored as real and imaginary :class:`DD` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: DD, im: DD):
        self.re = re
        self.im = im

    @classmethod
    def from_complex(cls, z):
        z = np.asarray(z)
        return cls(DD(np.ascontiguousarray(z.real)), DD(np.ascontiguousarray(z.imag)))

    def __neg__(self):
        return CDD(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, CDD):
            return CDD(self.re + other.re, self.im + other.im)
        return CDD(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CDD):
            return CDD(self.re * other.re - self.im * other.im,
                       self.re * other.im + self.im * other.re)
        # real DD or float
        return CDD(self.re * other, self.im * other)

    __rmul__ = __mul__

    def take(self, idx):
        return CDD(self.re.take(idx), self.im.take(idx))

    def to_float(self):
        return self.re.to_float() + 1j * self.im.to_float()

    def abs_hi(self):
        return np.hypot(self.re.hi, self.im.hi)
