"""Carlitz brackets, power sums S_d(s), S_{<d}(s), iterated power sums, log.

Notation: [n] = t^{q^n} - t,  ell_n = prod_{i=1..n} (t - t^{q^i}),
L_n = [n][n-1]...[1], so ell_n = (-1)^n L_n.

Power sums are produced as truncated Laurent series.  Every S_d(s) with
d >= 1 satisfies the a-priori bound

    val S_d(s) >= max(s*d, (1 + digitsum_q(s - 1)) * deg ell_d),

(the second term from expanding sum_a 1/(x - a - z) through the Carlitz
polynomial of A_{<d}), so levels whose bound reaches the requested precision
are returned as zero-to-precision without any enumeration.  This bound is
what keeps multizeta truncation rigorous.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (FieldConfig, LaurentSeries, Polynomial, RationalFunction,
                      monic_coefficient_matrix)

DEFAULT_BUDGET = 2 ** 20


class BudgetExceeded(RuntimeError):
    pass


# -- brackets ----------------------------------------------------------------

@lru_cache(maxsize=None)
def bracket(field: FieldConfig, n: int) -> Polynomial:
    """[n] = t^{q^n} - t."""
    if n < 1:
        raise ValueError("bracket [n] needs n >= 1")
    return Polynomial.t(field, field.q ** n) - Polynomial.t(field)


@lru_cache(maxsize=None)
def ell(field: FieldConfig, n: int) -> Polynomial:
    """ell_n = prod_{i=1..n} (t - t^{q^i}); ell_0 = 1."""
    if n < 0:
        raise ValueError("ell_n needs n >= 0")
    if n == 0:
        return Polynomial.one(field)
    return ell(field, n - 1) * (Polynomial.t(field) - Polynomial.t(field, field.q ** n))


@lru_cache(maxsize=None)
def big_l(field: FieldConfig, n: int) -> Polynomial:
    """L_n = [n][n-1]...[1]; L_0 = 1."""
    if n < 0:
        raise ValueError("L_n needs n >= 0")
    if n == 0:
        return Polynomial.one(field)
    return big_l(field, n - 1) * bracket(field, n)


def deg_ell(q: int, n: int) -> int:
    return (q ** (n + 1) - q) // (q - 1)


def digit_sum(n: int, q: int) -> int:
    total = 0
    while n:
        n, r = divmod(n, q)
        total += r
    return total


def valuation_bound(q: int, d: int, s: int) -> int:
    """Lower bound for the valuation of S_d(s)."""
    if d == 0:
        return 0
    return max(s * d, (1 + digit_sum(s - 1, q)) * deg_ell(q, d))


@lru_cache(maxsize=None)
def _ell_series_inverse(field: FieldConfig, n: int, rel: int) -> LaurentSeries:
    return LaurentSeries.from_polynomial(ell(field, n)).inverse(rel=rel)


def ell_inverse_series(field: FieldConfig, n: int, rel: int) -> LaurentSeries:
    """1/ell_n with relative precision `rel` (cached, reused by truncation)."""
    # round up so nearby requests share one computation
    r = max(32, 1 << (max(rel, 1) - 1).bit_length())
    x = _ell_series_inverse(field, n, r)
    return x.truncate(x.val + rel)


# -- closed forms ------------------------------------------------------------

@dataclass(frozen=True)
class EllProduct:
    """prod ell_{index}^{exp}; index is d + offset (relative) or a constant."""

    factors: tuple  # of (relative: bool, offset: int, exponent: int)
    rule: str

    def at(self, d: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for relative, off, e in self.factors:
            idx = d + off if relative else off
            if idx < 0:
                raise ValueError(f"ell index {idx} < 0 for d={d}")
            if idx == 0:
                continue
            out[idx] = out.get(idx, 0) + e
        return {k: v for k, v in out.items() if v}


def _twist(prod: EllProduct, e: int) -> tuple:
    return tuple((r, o, x * e) for r, o, x in prod.factors)


def _is_q_power_minus_one(s: int, q: int):
    j, v = 0, 1
    while v - 1 < s:
        v *= q
        j += 1
    return j if v - 1 == s and j >= 1 else None


def rule_c_representation(s: int, q: int):
    """(k, [k_1..k_m]) with s = q^k - sum q^{k_i}, 1 <= m < q, 0 <= k_i < k."""
    k = 0
    while q ** k <= s:
        k += 1
    # r = q^k - s has digits only below position k; a power of q needs the next k
    for kk in (k, k + 1):
        r = q ** kk - s
        if r <= 0:
            continue
        ks = []
        e, rr = 0, r
        while rr:
            rr, dig = divmod(rr, q)
            ks.extend([e] * dig)
            e += 1
        if 1 <= len(ks) < q and all(x < kk for x in ks):
            return kk, ks
    return None


@lru_cache(maxsize=None)
def closed_form_plan(q: int, s: int):
    """EllProduct for S_d(s) when a Carlitz-type evaluation applies, else None."""
    if s < 1:
        raise ValueError("s must be >= 1")
    if s <= q:
        return EllProduct(((True, 0, -s),), "a")
    j = _is_q_power_minus_one(s, q)
    if j is not None:
        return EllProduct(((True, j - 1, 1), (False, j - 1, -1), (True, 0, -q ** j)), "b")
    rep = rule_c_representation(s, q)
    if rep is not None:
        k, ks = rep
        m = len(ks)
        factors = [(True, 0, (m - 1) * q ** k)]
        for ki in ks:
            jj = k - ki
            inner = EllProduct(((True, jj - 1, 1), (False, jj - 1, -1), (True, 0, -q ** jj)), "b")
            factors.extend(_twist(inner, q ** ki))
        return EllProduct(tuple(factors), "c")
    return None


def _find_power_multiset(r: int, m: int, max_exp: int, q: int):
    """m exponents in [0, max_exp] (non-increasing) with sum q^e = r, or None."""
    if m == 0:
        return [] if r == 0 else None
    if r < m or r > m * q ** max_exp:
        return None
    for e in range(max_exp, -1, -1):
        v = q ** e
        if v > r:
            continue
        rest = _find_power_multiset(r - v, m - 1, e, q)
        if rest is not None:
            return [e] + rest
    return None


@lru_cache(maxsize=None)
def below_closed_form_plan(q: int, s: int):
    """EllProduct for S_{<d}(s) (valid for d >= 1), or None."""
    j = _is_q_power_minus_one(s, q)
    if j is not None:
        return EllProduct(((True, j - 1, 1), (False, j, -1), (True, -1, -q ** j)), "ltd-b")
    k = 1
    while q ** k <= s + q ** k and k < 64:
        for m in range(1, q + 1):
            r = m * q ** k - s
            if r < 0:
                continue
            ks = _find_power_multiset(r, m, k, q)
            if ks is None:
                continue
            factors = []
            for ki in ks:
                if ki == k:
                    continue  # S_{<d}(0) = 1 in characteristic p
                jj = k - ki
                factors.extend([(True, jj - 1, q ** ki), (False, jj, -q ** ki),
                                (True, -1, -q ** jj * q ** ki)])
            return EllProduct(tuple(factors), "ltd-product")
        if q ** k > s:
            break
        k += 1
    return None


def _ell_product_rational(field: FieldConfig, exps: dict[int, int]) -> RationalFunction:
    num = Polynomial.one(field)
    den = Polynomial.one(field)
    for idx, e in sorted(exps.items()):
        if e > 0:
            num = num * ell(field, idx) ** e
        else:
            den = den * ell(field, idx) ** (-e)
    return RationalFunction(num, den)


def _ell_product_series(field: FieldConfig, exps: dict[int, int], prec: int) -> LaurentSeries:
    q = field.q
    val = -sum(e * deg_ell(q, idx) for idx, e in exps.items())
    if val >= prec:
        return LaurentSeries.zero(field, prec)
    rel = prec - val
    acc = LaurentSeries.one(field)
    for idx, e in sorted(exps.items()):
        if e > 0:
            acc = acc * LaurentSeries.from_polynomial(ell(field, idx) ** e)
        else:
            acc = acc * ell_inverse_series(field, idx, rel) ** (-e)
    return acc.truncate(prec)


def power_sum_closed(field: FieldConfig, d: int, s: int):
    """Exact S_d(s) as a RationalFunction, or None when no closed form applies."""
    if d < 0 or s < 1:
        raise ValueError("need d >= 0 and s >= 1")
    plan = closed_form_plan(field.q, s)
    if plan is None:
        return None
    return _ell_product_rational(field, plan.at(d))


def power_sum_below_closed(field: FieldConfig, d: int, s: int):
    if d < 1:
        return RationalFunction.from_poly(Polynomial.zero(field))
    plan = below_closed_form_plan(field.q, s)
    if plan is None:
        return None
    return _ell_product_rational(field, plan.at(d))


# -- brute force ---------------------------------------------------------------

def power_sum_bruteforce(field: FieldConfig, d: int, s: int, prec: int,
                         budget: int = DEFAULT_BUDGET) -> LaurentSeries:
    """sum over monic a of degree d of a^{-s}, summed term by term."""
    if d < 0 or s < 1:
        raise ValueError("need d >= 0 and s >= 1")
    if d == 0:
        return LaurentSeries.one(field, prec)
    n = field.q ** d
    if n > budget:
        raise BudgetExceeded(f"S_{d}({s}) needs {n} terms, above the enumeration budget {budget}")
    rel = prec - s * d
    if rel <= 0:
        return LaurentSeries.zero(field, prec)
    rows = monic_coefficient_matrix(d, field)
    acc = np.zeros(rel, dtype=np.int64)
    for row in rows:
        a = LaurentSeries(field, -d, row[::-1], None)
        term = a.inverse(rel=rel) ** s
        acc = field.vadd(acc, term._window(s * d, prec))
    return LaurentSeries(field, s * d, acc, prec)


# -- cached dispatch -------------------------------------------------------------

class PowerSumCache:
    """Memo of power-sum series; a higher-precision entry serves lower requests."""

    def __init__(self):
        self._lock = threading.RLock()
        self._store: dict = {}
        self.hits = 0
        self.misses = 0

    def get_or_compute(self, key, prec: int, compute):
        with self._lock:
            hit = self._store.get(key)
            if hit is not None and hit.prec >= prec:
                self.hits += 1
                return hit.truncate(prec)
            self.misses += 1
            value = compute(prec)
            self._store[key] = value
            return value

    def clear(self):
        with self._lock:
            self._store.clear()


CACHE = PowerSumCache()


def power_sum(field: FieldConfig, d: int, s: int, prec: int, method: str = "auto",
              budget: int = DEFAULT_BUDGET) -> LaurentSeries:
    """S_d(s) to absolute precision `prec`.

    method: 'auto' (closed form when available, else enumeration),
    'closed', or 'bruteforce'.
    """
    if d < 0 or s < 1:
        raise ValueError("need d >= 0 and s >= 1")
    if d == 0:
        return LaurentSeries.one(field, prec)
    if valuation_bound(field.q, d, s) >= prec:
        return LaurentSeries.zero(field, prec)

    def compute(n):
        if method in ("auto", "closed"):
            plan = closed_form_plan(field.q, s)
            if plan is not None:
                return _ell_product_series(field, plan.at(d), n)
            if method == "closed":
                raise ValueError(f"no closed form for S_d({s}) with q={field.q}")
        return power_sum_bruteforce(field, d, s, n, budget)

    return CACHE.get_or_compute((field, "at", d, s, method), prec, compute)


def power_sum_below(field: FieldConfig, d: int, s: int, prec: int, method: str = "auto",
                    budget: int = DEFAULT_BUDGET) -> LaurentSeries:
    """S_{<d}(s) = sum_{0 <= e < d} S_e(s)."""
    if d <= 0:
        return LaurentSeries.zero(field, prec)
    if d == 1:
        return LaurentSeries.one(field, prec)

    def compute(n):
        if method in ("auto", "closed"):
            plan = below_closed_form_plan(field.q, s)
            if plan is not None:
                return _ell_product_series(field, plan.at(d), n)
        acc = LaurentSeries.zero(field, n)
        for e in range(d):
            acc = acc + power_sum(field, e, s, n, "bruteforce" if method == "bruteforce" else "auto",
                                  budget)
        return acc

    return CACHE.get_or_compute((field, "below", d, s, method), prec, compute)


def iterated_power_sum(field: FieldConfig, d: int, tup, prec: int, **kw) -> LaurentSeries:
    """S_d(s_1, ..., s_r) = S_d(s_1) * sum_{d > d_2 > ... > d_r >= 0} prod S_{d_i}(s_i)."""
    tup = tuple(tup)
    if not tup:
        raise ValueError("tuple must be non-empty")
    r = len(tup)
    if d < r - 1:
        return LaurentSeries.zero(field, prec)
    # W[e] for the current suffix, e = 0..d
    w = [power_sum(field, e, tup[-1], prec, **kw) for e in range(d + 1)]
    for s in reversed(tup[:-1]):
        new = []
        prefix = LaurentSeries.zero(field, prec)
        for e in range(d + 1):
            new.append((power_sum(field, e, s, prec, **kw) * prefix).truncate(prec))
            prefix = prefix + w[e]
        w = new
    return w[d]


# -- Carlitz logarithm -------------------------------------------------------

def carlitz_log(z: LaurentSeries, prec: int, d_max: int | None = None) -> LaurentSeries:
    """log(z) = sum_{d >= 0} z^{q^d} / ell_d.

    Converges for val(z) > -q/(q-1), i.e. val(z) >= -1.
    """
    field = z.field
    q = field.q
    if z.is_zero():
        return LaurentSeries.zero(field, prec)
    v = z.valuation
    if v * (q - 1) + q <= 0:
        raise ValueError(f"Carlitz log does not converge at valuation {v}")
    if d_max is None:
        d_max = 0
        while q ** (d_max + 1) * v + deg_ell(q, d_max + 1) < prec:
            d_max += 1
    acc = LaurentSeries.zero(field, prec)
    for d in range(d_max + 1):
        tv = q ** d * v + deg_ell(q, d)
        if tv >= prec:
            continue
        # z^{q^d} needs relative precision prec - tv to land at prec after the division
        zq = z ** (q ** d)
        term = zq * ell_inverse_series(field, d, prec - tv)
        acc = acc + term.truncate(prec)
    return acc
