"""Truncated Laurent series in 1/t over F_q with explicit absolute precision.

A series is stored as (val, coeffs, prec): the value is
sum(coeffs[i] * t**-(val + i)) and every coefficient at an exponent of 1/t
below `prec` is exact.  Inexact series keep coeffs covering [val, prec)
exactly, so `prec - val` is the relative precision.  `prec=None` marks an
exact series with finitely many terms (polynomials and their products).

Precision propagates worst-case:
  add   -> min(Na, Nb)
  mul   -> min(Na + vb, Nb + va)
  inv   -> Na - 2 va
"""
from __future__ import annotations

import numpy as np

from .field import FieldConfig, FieldElement
from .polynomial import Polynomial, RationalFunction

_EMPTY = np.zeros(0, dtype=np.int64)


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LaurentSeries:
    __slots__ = ("field", "val", "coeffs", "prec")

    def __init__(self, field: FieldConfig, val: int, coeffs, prec: int | None):
        c = np.asarray(coeffs, dtype=np.int64)
        nz = np.nonzero(c)[0]
        if prec is not None:
            if len(nz) == 0 or val + int(nz[0]) >= prec:
                val, c = prec, _EMPTY
            else:
                val = val + int(nz[0])
                c = c[int(nz[0]): prec - val + int(nz[0])]
                if len(c) < prec - val:
                    c = np.concatenate([c, np.zeros(prec - val - len(c), dtype=np.int64)])
        else:
            if len(nz) == 0:
                val, c = 0, _EMPTY
            else:
                c = c[int(nz[0]): int(nz[-1]) + 1]
                val = val + int(nz[0])
        c = np.array(c, dtype=np.int64)
        c.setflags(write=False)
        self.field = field
        self.val = int(val)
        self.coeffs = c
        self.prec = prec

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, field, prec: int | None = None):
        """Zero to precision `prec` (exact zero when prec is None)."""
        return cls(field, 0 if prec is None else prec, _EMPTY, prec)

    @classmethod
    def one(cls, field, prec: int | None = None):
        return cls(field, 0, [1], prec)

    @classmethod
    def from_polynomial(cls, f: Polynomial, prec: int | None = None):
        if f.is_zero():
            return cls.zero(f.field, prec)
        return cls(f.field, -int(f.degree), f.coeffs[::-1], prec)

    @classmethod
    def from_coefficients(cls, field, val: int, coeffs, prec: int | None):
        return cls(field, val, coeffs, prec)

    # -- inspection -----------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.prec is None

    @property
    def rel(self):
        """Relative precision (None when exact)."""
        return None if self.prec is None else self.prec - self.val

    def is_zero(self) -> bool:
        """True when zero to the declared precision (or exactly zero)."""
        return len(self.coeffs) == 0

    @property
    def valuation(self):
        """Exponent of 1/t of the leading term; prec when zero-to-precision."""
        if len(self.coeffs) == 0:
            return float("inf") if self.prec is None else self.prec
        return self.val

    @property
    def leading(self) -> int:
        return int(self.coeffs[0]) if len(self.coeffs) else 0

    def coefficient(self, e: int) -> int:
        if self.prec is not None and e >= self.prec:
            raise ValueError(f"coefficient at exponent {e} is beyond precision {self.prec}")
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return int(self.coeffs[i])
        return 0

    def coefficient_list(self, start: int, stop: int) -> list[int]:
        return [self.coefficient(e) for e in range(start, stop)]

    def _window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for exponents lo..hi-1 (zeros outside the support)."""
        out = np.zeros(max(hi - lo, 0), dtype=np.int64)
        if len(self.coeffs) == 0 or hi <= lo:
            return out
        a = max(lo, self.val)
        b = min(hi, self.val + len(self.coeffs))
        if b > a:
            out[a - lo: b - lo] = self.coeffs[a - self.val: b - self.val]
        return out

    def _check(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if other.field != self.field:
            raise TypeError("series over different fields")
        return other

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            return self._check(other)
        if isinstance(other, Polynomial):
            return LaurentSeries.from_polynomial(other)
        if isinstance(other, RationalFunction):
            return rational_to_series(other, self.prec if self.prec is not None else 64)
        if isinstance(other, (int, FieldElement)):
            return LaurentSeries.from_polynomial(Polynomial.constant(self.field, other))
        return NotImplemented

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min_prec(self.prec, other.prec)
        parts = [x for x in (self, other) if len(x.coeffs)]
        if not parts:
            return LaurentSeries.zero(self.field, prec)
        lo = min(x.val for x in parts)
        hi = prec if prec is not None else max(x.val + len(x.coeffs) for x in parts)
        if hi <= lo:
            return LaurentSeries.zero(self.field, prec)
        acc = parts[0]._window(lo, hi)
        for x in parts[1:]:
            acc = self.field.vadd(acc, x._window(lo, hi))
        return LaurentSeries(self.field, lo, acc, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.val, self.field.vneg(self.coeffs), self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        if (self.prec is None and not len(self.coeffs)) or (other.prec is None and not len(other.coeffs)):
            return LaurentSeries.zero(f)
        val = self.val + other.val
        if self.prec is None and other.prec is None:
            return LaurentSeries(f, val, f.convolve(self.coeffs, other.coeffs), None)
        rel = min(r for r in (self.rel, other.rel) if r is not None)
        if rel <= 0 or not len(self.coeffs) or not len(other.coeffs):
            return LaurentSeries.zero(f, val + max(rel, 0))
        c = f.convolve(self.coeffs, other.coeffs, rel)
        return LaurentSeries(f, val, c, val + rel)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentSeries":
        if isinstance(c, FieldElement):
            c = c.value
        return LaurentSeries(self.field, self.val, self.field.vscale(c, self.coeffs), self.prec)

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by t**n."""
        return LaurentSeries(self.field, self.val - n, self.coeffs,
                             None if self.prec is None else self.prec - n)

    def inverse(self, prec: int | None = None, rel: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse.

        Exact inputs need a target: absolute `prec` or relative `rel`.
        """
        if not len(self.coeffs):
            raise ZeroDivisionError("insufficient precision to invert")
        f = self.field
        v = self.val
        r = self.rel
        if rel is not None:
            r = rel if r is None else min(r, rel)
        if prec is not None:
            r = prec + v if r is None else min(r, prec + v)
        if r is None:
            raise ValueError("inverting an exact series needs a target precision")
        if r <= 0:
            return LaurentSeries.zero(f, -v + max(r, 0))
        a = self.coeffs[:r]
        if len(a) < r:
            a = np.concatenate([a, np.zeros(r - len(a), dtype=np.int64)])
        g = np.array([f.inv(int(a[0]))], dtype=np.int64)
        m = 1
        while m < r:
            m = min(2 * m, r)
            e = f.convolve(a[:m], g, m)
            e = np.concatenate([e, np.zeros(m - len(e), dtype=np.int64)])
            e[0] = f.sub(int(e[0]), 1)
            corr = f.convolve(g, e, m)
            corr = np.concatenate([corr, np.zeros(m - len(corr), dtype=np.int64)])
            g = np.concatenate([g, np.zeros(m - len(g), dtype=np.int64)])
            g = f.vsub(g, corr)
        return LaurentSeries(f, -v, g, -v + r)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_exact:
            target = None if self.prec is None else self.prec - self.val
            if target is None:
                raise ValueError("exact / exact division needs a target precision")
            return self * other.inverse(rel=max(target, 0))
        return self * other.inverse()

    def frobenius(self) -> "LaurentSeries":
        """x -> x**p; exact coefficientwise map, multiplies precision by p."""
        f = self.field
        p = f.p
        if not len(self.coeffs):
            return LaurentSeries.zero(f, None if self.prec is None else p * self.prec)
        if self.prec is None:
            n = p * (len(self.coeffs) - 1) + 1
        else:
            n = p * self.rel
        c = np.zeros(n, dtype=np.int64)
        c[::p] = f.vfrobenius(self.coeffs)
        return LaurentSeries(f, p * self.val, c, None if self.prec is None else p * self.prec)

    def __pow__(self, k: int) -> "LaurentSeries":
        f = self.field
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return LaurentSeries.one(f)
        p = f.p
        frob = 0
        while k % p == 0:
            k //= p
            frob += 1
        result = None
        base = self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        for _ in range(frob):
            result = result.frobenius()
        return result

    def truncate(self, prec: int) -> "LaurentSeries":
        if self.prec is not None and self.prec <= prec:
            return self
        return LaurentSeries(self.field, self.val, self.coeffs, prec)

    def polynomial_part(self) -> Polynomial:
        """Sum of the terms c_e t^{-e} with e <= 0."""
        if self.prec is not None and self.prec <= 0:
            raise ValueError("no integer part available")
        if not len(self.coeffs) or self.val > 0:
            return Polynomial.zero(self.field)
        top = -self.val
        w = self._window(self.val, 1)
        # w[i] is the coefficient at exponent val+i, i.e. of t^(top-i)
        return Polynomial(self.field, w[::-1])

    # -- comparisons ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.field == other.field and self.prec == other.prec
                and self.valuation == other.valuation
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None

    def agrees_with(self, other: "LaurentSeries", prec: int | None = None) -> bool:
        """Equal at every exponent below the common (or given) precision."""
        n = _min_prec(self.prec, other.prec)
        if prec is not None:
            n = prec if n is None else min(n, prec)
        d = self - other
        if n is None:
            return d.is_zero()
        return d.truncate(n).is_zero()

    def coefficients_in_prime_field(self) -> bool:
        return bool(np.all(self.coeffs < self.field.p))

    def __repr__(self):
        f = self.field
        terms = []
        for i, c in enumerate(self.coeffs.tolist()[:8]):
            if c:
                e = self.val + i
                mono = "1" if e == 0 else (f"t^{-e}" if e < 0 else f"t^-{e}")
                cs = f.format_code(c)
                if e == 0:
                    terms.append(cs)
                else:
                    terms.append(mono if c == 1 else f"{cs}*{mono}")
        body = " + ".join(terms) if terms else "0"
        if len(self.coeffs) > 8:
            body += " + ..."
        tail = "exact" if self.prec is None else f"O(t^-{self.prec})"
        return f"LaurentSeries({body} ; {tail})"


def rational_to_series(r: RationalFunction | Polynomial, prec: int) -> LaurentSeries:
    """Expansion of r in F_q((1/t)), exact below exponent `prec`."""
    if isinstance(r, Polynomial):
        return LaurentSeries.from_polynomial(r).truncate(prec)
    f = r.field
    if r.num.is_zero():
        return LaurentSeries.zero(f, prec)
    v = int(r.den.degree - r.num.degree)
    if v >= prec:
        return LaurentSeries.zero(f, prec)
    num = LaurentSeries.from_polynomial(r.num)
    if r.den.degree == 0:
        return num.scale(f.inv(r.den.leading)).truncate(prec)
    inv_den = LaurentSeries.from_polynomial(r.den).inverse(rel=prec - v)
    return (num * inv_den).truncate(prec)


def polynomial_part(x: LaurentSeries) -> Polynomial:
    return x.polynomial_part()
