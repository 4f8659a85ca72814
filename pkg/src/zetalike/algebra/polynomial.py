"""Polynomials in t over F_q and reduced rational functions in F_q(t)."""
from __future__ import annotations

import itertools
from typing import Iterator

import numpy as np

from .field import FieldConfig, FieldElement


def _strip(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class Polynomial:
    """Element of F_q[t]; coefficients are field codes in ascending powers of t."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldConfig, coeffs=()):
        c = np.asarray(coeffs, dtype=np.int64)
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        c = _strip(c.copy())
        c.setflags(write=False)
        self.field = field
        self.coeffs = c
        self._hash = None

    # constructors
    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def t(cls, field, n: int = 1):
        c = np.zeros(n + 1, dtype=np.int64)
        c[n] = 1
        return cls(field, c)

    @classmethod
    def constant(cls, field, c):
        if isinstance(c, FieldElement):
            c = c.value
        else:
            c = field.from_int(int(c))
        return cls(field, (c,))

    # basic properties
    @property
    def degree(self) -> float | int:
        """Degree; -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if len(self.coeffs) else float("-inf")

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def leading(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.is_monic():
            return self
        return self.scale(self.field.inv(self.leading))

    def __getitem__(self, i: int) -> int:
        return int(self.coeffs[i]) if 0 <= i < len(self.coeffs) else 0

    def _other(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise TypeError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement)):
            return Polynomial.constant(self.field, other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = np.pad(a, (0, n - len(a)))
        b = np.pad(b, (0, n - len(b)))
        return Polynomial(self.field, self.field.vadd(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.field, self.field.vneg(self.coeffs))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.field)
        return Polynomial(self.field, self.field.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        return Polynomial(self.field, self.field.vscale(c, self.coeffs))

    def shift(self, n: int) -> "Polynomial":
        """Multiply by t**n (n >= 0)."""
        if self.is_zero():
            return self
        return Polynomial(self.field, np.concatenate([np.zeros(n, dtype=np.int64), self.coeffs]))

    def frobenius(self) -> "Polynomial":
        """f(t) -> f(t)**p, computed coefficientwise."""
        p = self.field.p
        if self.is_zero():
            return self
        c = np.zeros(p * (len(self.coeffs) - 1) + 1, dtype=np.int64)
        c[::p] = self.field.vfrobenius(self.coeffs)
        return Polynomial(self.field, c)

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative polynomial power; use RationalFunction")
        p = self.field.p
        result = Polynomial.one(self.field)
        base = self
        # peel off factors of p via Frobenius; the rest by squaring
        frob = 0
        while e and e % p == 0:
            e //= p
            frob += 1
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        for _ in range(frob):
            result = result.frobenius()
        return result

    def __divmod__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        f = self.field
        if len(self.coeffs) < len(other.coeffs):
            return Polynomial.zero(f), self
        rem = self.coeffs.copy()
        b = other.coeffs
        nb = len(b)
        inv_lead = f.inv(int(b[-1]))
        quot = np.zeros(len(rem) - nb + 1, dtype=np.int64)
        for k in range(len(rem) - nb, -1, -1):
            c = int(rem[k + nb - 1])
            if c == 0:
                continue
            c = f.mul(c, inv_lead)
            quot[k] = c
            rem[k:k + nb] = f.vsub(rem[k:k + nb], f.vscale(c, b))
        return Polynomial(f, quot), Polynomial(f, rem[: nb - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd; gcd(0, 0) = 0."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Polynomial"):
        """(g, u, v) with u*self + v*other = g monic."""
        f = self.field
        r0, r1 = self, other
        s0, s1 = Polynomial.one(f), Polynomial.zero(f)
        t0, t1 = Polynomial.zero(f), Polynomial.one(f)
        while not r1.is_zero():
            qt, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if r0.is_zero():
            return r0, s0, t0
        c = f.inv(r0.leading)
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        f = self.field
        xv = x.value if isinstance(x, FieldElement) else f.from_int(int(x))
        acc = 0
        for c in reversed(self.coeffs.tolist()):
            acc = f.add(f.mul(acc, xv), c)
        return FieldElement(f, acc)

    eval = __call__

    # comparisons / display
    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = Polynomial.constant(self.field, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs.tobytes()))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def to_list(self) -> list[int]:
        return self.coeffs.tolist()

    def format(self, var: str = "t") -> str:
        """Descending powers, explicit non-unit coefficients: '2*t^3 + t'."""
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = int(self.coeffs[i])
            if not c:
                continue
            cs = self.field.format_code(c)
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()})"


def monics_of_degree(d: int, field: FieldConfig) -> Iterator[Polynomial]:
    """All q**d monic polynomials of degree d, lexicographic in (c_0, ..., c_{d-1})."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    for low in itertools.product(range(field.q), repeat=d):
        yield Polynomial(field, low + (1,))


def monic_coefficient_matrix(d: int, field: FieldConfig) -> np.ndarray:
    """Coefficient rows of monics_of_degree(d), same order, shape (q**d, d+1)."""
    q = field.q
    n = q ** d
    out = np.zeros((n, d + 1), dtype=np.int64)
    idx = np.arange(n)
    for j in range(d):
        # c_0 is the most significant lexicographic digit
        out[:, j] = (idx // q ** (d - 1 - j)) % q
    out[:, d] = 1
    return out


class RationalFunction:
    """Reduced fraction num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None, *, reduce: bool = True):
        field = num.field
        if den is None:
            den = Polynomial.one(field)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if reduce:
            if num.is_zero():
                den = Polynomial.one(field)
            else:
                g = num.gcd(den)
                if g.degree > 0:
                    num, den = num // g, den // g
            c = den.leading
            if c != 1:
                ic = field.inv(c)
                num, den = num.scale(ic), den.scale(ic)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, f: Polynomial):
        return cls(f, Polynomial.one(f.field), reduce=False)

    def _other(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction.from_poly(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction.from_poly(Polynomial.constant(self.field, other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        # reduced stays reduced under powers
        return RationalFunction(self.num ** e, self.den ** e, reduce=False)

    @property
    def valuation(self):
        """Order at infinity: deg den - deg num (inf for zero)."""
        if self.num.is_zero():
            return float("inf")
        return self.den.degree - self.num.degree

    def is_zero(self):
        return self.num.is_zero()

    def coefficients_in_prime_field(self) -> bool:
        p = self.field.p
        return bool(np.all(self.num.coeffs < p) and np.all(self.den.coeffs < p))

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def format(self, var: str = "t") -> str:
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        d = self.den.format(var)
        if len(self.num.coeffs) and np.count_nonzero(self.num.coeffs) > 1:
            n = f"({n})"
        if np.count_nonzero(self.den.coeffs) > 1 or self.den[len(self.den.coeffs) - 1] != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()})"
