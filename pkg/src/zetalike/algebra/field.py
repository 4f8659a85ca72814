"""Finite fields F_q, q = p^s, and vectorised coefficient arithmetic.

An element of F_q = F_p[x]/(m(x)) is encoded as the integer sum(c_i * p**i)
where c_0 + c_1 x + ... + c_{s-1} x^{s-1} is its reduced representative.
Elements of the prime field therefore encode as 0..p-1, which keeps every
quantity with prime-field coefficients printable as plain integers.

Coefficient sequences (of polynomials and Laurent series) are numpy int64
arrays of such codes; `FieldConfig` supplies the vectorised add/mul/convolve
used by the higher layers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

# ascending coefficient tuples over F_p, monic of degree s
DEFAULT_MODULI = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    25: (2, 1, 1),       # x^2 + x + 2
    27: (1, 2, 0, 1),    # x^3 + 2x + 1
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, s) with q = p**s, or raise ValueError."""
    if q >= 2:
        for p in range(2, q + 1):
            if q % p == 0:
                if not _is_prime(p):
                    break
                s, r = 0, q
                while r % p == 0:
                    r //= p
                    s += 1
                if r == 1:
                    return p, s
                break
    raise ValueError(f"q must be a prime power (got {q})")


def _poly_mod_p(a, b, p):
    """Remainder of a by monic-or-not b over F_p (lists, ascending)."""
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible_mod_p(modulus, p: int) -> bool:
    """Brute-force irreducibility: trial division by every monic of degree <= s/2."""
    s = len(modulus) - 1
    if s <= 1:
        return s == 1
    for deg in range(1, s // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_mod_p(modulus, list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class FieldConfig:
    """The field F_q with q = p**s, modelled as F_p[x]/(modulus)."""

    p: int
    s: int = 1
    modulus: tuple[int, ...] = (0, 1)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime (got {self.p})")
        if self.s < 1:
            raise ValueError("extension degree must be >= 1")
        m = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        if len(m) != self.s + 1 or m[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.s}")
        if self.s > 1 and not is_irreducible_mod_p(m, self.p):
            raise ValueError(f"modulus {m} is reducible over F_{self.p}")

    @classmethod
    def for_q(cls, q: int, modulus=None) -> "FieldConfig":
        p, s = prime_power(q)
        if s == 1:
            return cls(p, 1, (0, 1))
        if modulus is None:
            if q not in DEFAULT_MODULI:
                raise ValueError(f"no built-in modulus for q={q}; supply one")
            modulus = DEFAULT_MODULI[q]
        return cls(p, s, tuple(modulus))

    @property
    def q(self) -> int:
        return self.p ** self.s

    @property
    def is_prime(self) -> bool:
        return self.s == 1

    def __repr__(self):
        if self.s == 1:
            return f"GF({self.p})"
        return f"GF({self.q}, modulus={self.modulus})"

    # -- element codes -------------------------------------------------

    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** i) % self.p for i in range(self.s)]

    def encode(self, digits) -> int:
        return sum((int(c) % self.p) * self.p ** i for i, c in enumerate(digits))

    def _mul_digits(self, a, b):
        p, s, m = self.p, self.s, self.modulus
        prod = [0] * (2 * s - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(s):
                    prod[k - s + i] -= c * m[i]
            prod[k] = 0
        return [c % p for c in prod[:s]]

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = self.digits(a)
            for b in range(q):
                t[a, b] = self.encode([x + y for x, y in zip(da, self.digits(b))])
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = self.digits(a)
            for b in range(q):
                t[a, b] = self.encode(self._mul_digits(da, self.digits(b)))
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.encode([-c for c in self.digits(a)]) for a in range(self.q)],
                        dtype=np.int64)

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        mt = self.mul_table
        for a in range(1, self.q):
            inv[a] = int(np.nonzero(mt[a] == 1)[0][0])
        return inv

    @cached_property
    def frobenius_table(self) -> np.ndarray:
        """x -> x**p on codes."""
        out = np.arange(self.q, dtype=np.int64)
        if self.s == 1:
            return out
        mt = self.mul_table
        for a in range(self.q):
            r = 1
            for _ in range(self.p):
                r = int(mt[r, a])
            out[a] = r
        return out

    # -- scalar operations on codes ------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.s == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def neg(self, a: int) -> int:
        if self.s == 1:
            return (-a) % self.p
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.s == 1:
            return a * b % self.p
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("division by zero in F_q")
        if self.s == 1:
            return pow(a, self.p - 2, self.p)
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime field."""
        return n % self.p

    # -- vectorised operations on code arrays --------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return (a + b) % self.p
        return self.add_table[a, b]

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return (-a) % self.p
        return self.neg_table[a]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vscale(self, c: int, a: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return (c * a) % self.p
        return self.mul_table[c, a]

    def vfrobenius(self, a: np.ndarray) -> np.ndarray:
        if self.s == 1:
            return a
        return self.frobenius_table[a]

    def convolve(self, a: np.ndarray, b: np.ndarray, n: int | None = None) -> np.ndarray:
        """Coefficients of the product of two coefficient arrays, first n kept."""
        if len(a) == 0 or len(b) == 0:
            return np.zeros(0, dtype=np.int64)
        if n is not None:
            a, b = a[:n], b[:n]
        p = self.p
        if self.s == 1:
            out = np.convolve(a, b) % p
        else:
            s, m = self.s, self.modulus
            da = [(a // p ** i) % p for i in range(s)]
            db = [(b // p ** i) % p for i in range(s)]
            length = len(a) + len(b) - 1
            acc = [np.zeros(length, dtype=np.int64) for _ in range(2 * s - 1)]
            for i in range(s):
                for j in range(s):
                    acc[i + j] += np.convolve(da[i], db[j])
            for k in range(2 * s - 2, s - 1, -1):
                top = acc[k] % p
                for i in range(s):
                    if m[i]:
                        acc[k - s + i] -= m[i] * top
            out = np.zeros(length, dtype=np.int64)
            for i in range(s):
                out += (acc[i] % p) * p ** i
        if n is not None:
            out = out[:n]
        return out

    # -- element helpers -----------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.encode(value))
        return FieldElement(self, int(value) % self.p if self.s == 1 else int(value))

    def elements(self):
        return [FieldElement(self, a) for a in range(self.q)]

    def generator_name(self) -> str:
        return "g"

    def format_code(self, a: int) -> str:
        """Prime-field elements print as integers, others as polynomials in g."""
        if a < self.p:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.digits(a)))):
            if not c:
                continue
            mono = "" if i == 0 else ("g" if i == 1 else f"g^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        if len(terms) == 1:
            return terms[0]
        return "(" + " + ".join(terms) + ")"


class FieldElement:
    """An element of F_q; thin wrapper over its integer code."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldConfig, value: int):
        if not 0 <= value < field.q:
            raise ValueError(f"code {value} out of range for {field}")
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise TypeError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * FieldElement(self.field, self.field.inv(b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return self.field.format_code(self.value)
