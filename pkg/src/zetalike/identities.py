"""Zeta-like identity families and their numeric verification.

Each family produces IdentityCase objects

    zeta(lhs_tuple) = coefficient * zeta(rhs_arg)

with an exact rational coefficient built from brackets and ell's.  The
families named main*/mainII are theorems (a failure is a bug); conj461..463
are conjectural (a failure is a finding).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import FieldConfig, LaurentSeries, Polynomial, RationalFunction, rational_to_series
from .carlitz import bracket, ell, iterated_power_sum, power_sum
from .multizeta import zeta_series

THEOREM_FAMILIES = ("main1", "main2", "main3", "main4", "main5", "main6", "mainII")
CONJECTURE_FAMILIES = ("conj461", "conj462", "conj463")
FAMILIES = THEOREM_FAMILIES + CONJECTURE_FAMILIES


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class IdentityCase:
    family: str
    q: int
    params: tuple  # sorted (name, value) pairs
    lhs_tuple: tuple
    rhs_zeta_arg: int
    # unreduced coefficient num/den; reduced on demand
    coef_num: Polynomial = dc_field(compare=False, repr=False)
    coef_den: Polynomial = dc_field(compare=False, repr=False)

    @property
    def is_theorem(self) -> bool:
        return self.family in THEOREM_FAMILIES

    @cached_property
    def rhs_coefficient(self) -> RationalFunction:
        return RationalFunction(self.coef_num, self.coef_den)

    @property
    def coefficient_valuation(self) -> int:
        return int(self.coef_den.degree - self.coef_num.degree)

    def coefficient_series(self, prec: int) -> LaurentSeries:
        return rational_to_series(RationalFunction(self.coef_num, self.coef_den, reduce=False), prec)

    def describe(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}[{ps}] q={self.q}: zeta{self.lhs_tuple} ~ zeta({self.rhs_zeta_arg})"


@dataclass(frozen=True)
class VerificationReport:
    case: IdentityCase
    residual_valuation: int
    precision: int
    passed: bool


def _bracket_product(field, factors) -> Polynomial:
    """prod [i]^e over (i, e) pairs."""
    out = Polynomial.one(field)
    for i, e in factors:
        out = out * bracket(field, i) ** e
    return out


def _ell_product(field, factors) -> Polynomial:
    out = Polynomial.one(field)
    for i, e in factors:
        out = out * ell(field, i) ** e
    return out


def _require(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def instantiate_case(family: str, params: dict, field: FieldConfig) -> IdentityCase:
    """Build one instance; raises ParameterError naming a violated constraint."""
    q = field.q
    one = Polynomial.one(field)
    P = dict(params)
    if family == "main1":
        n, ks = P["n"], tuple(sorted(P["k"]))
        s = len(ks)
        _require(n > 0, "main1 requires n > 0")
        _require(1 <= s < q, "main1 requires 1 <= s < q")
        _require(all(0 <= k < n for k in ks), "main1 requires 0 <= k_i < n")
        sk = sum(q ** k for k in ks)
        lhs = (q ** n - sk, (q - 1) * q ** n)
        num = _bracket_product(field, [(n - k, q ** k) for k in ks])
        if s % 2:
            num = -num
        den = ell(field, 1) ** (q ** n)
        rhs = q ** (n + 1) - sk
        P = {"n": n, "s": s, "k": ks}
    elif family == "main2":
        n, s1, ks = P["n"], P["s1"], tuple(sorted(P.get("k", ())))
        s2 = len(ks)
        _require(n >= 0, "main2 requires n >= 0")
        _require(1 <= s1 <= q, "main2 requires 1 <= s_1 <= q")
        _require(0 <= s2 <= q - s1, "main2 requires 0 <= s_2 <= q - s_1")
        _require(all(0 <= k <= n + 1 for k in ks), "main2 requires 0 <= k_i <= n+1")
        a = s1 * q ** n
        b = s1 * (q ** (n + 1) - q ** n) + sum(q ** (n + 1) - q ** k for k in ks)
        lhs = (a, b)
        num, den = one, ell(field, 1) ** (s1 * q ** n)
        rhs = a + b
        P = {"n": n, "s1": s1, "s2": s2, "k": ks}
    elif family in ("main3", "main4"):
        num = one - bracket(field, 2) ** q
        if family == "main3":
            lhs = (q * q - (q - 1), (q - 1) * (q * q + 1))
            den = ell(field, 1) ** (q * q - 1) * ell(field, 2)
        else:
            lhs = (2 * q - 1, (q - 1) * (q * q + q - 1))
            den = ell(field, 1) ** (q + 1) * ell(field, 2) ** (q - 1)
        rhs = q ** 3
        P = {}
    elif family == "main5":
        l1, l2 = ell(field, 1), ell(field, 2)
        lhs = (1, q * q - 1)
        num, den = l1 + l2, l1 * l2
        rhs = q * q
        P = {}
    elif family == "main6":
        _require(q > 2, "main6 requires q > 2")
        n, j = P["n"], P["j"]
        _require(n >= 0, "main6 requires n >= 0")
        _require(-1 <= j <= n, "main6 requires -1 <= j <= n")
        lhs = ((q - 1) * q ** n - 1, (q - 1) * q ** (n + 1) + q ** n - q ** (n - j))
        num = -bracket(field, n + 1)
        den = bracket(field, 1) ** ((q - 1) * q ** n)
        rhs = q ** (n + 2) - q ** (n - j) - 1
        P = {"n": n, "j": j}
    elif family == "mainII":
        n = P["n"]
        _require(n >= 0, "mainII requires n >= 0")
        lhs = (1, q - 1) + tuple((q - 1) * q ** i for i in range(1, n + 1))
        num = one if n % 2 else -one
        den = _bracket_product(field, [(i, q ** (n + 1 - i)) for i in range(1, n + 2)])
        rhs = q ** (n + 1)
        P = {"n": n}
    elif family == "conj461":
        n, r = P["n"], P["r"]
        _require(n >= 1, "conj461 requires n >= 1")
        _require(r >= 2, "conj461 requires r >= 2")
        lhs = (q ** n - 1,) + tuple((q - 1) * q ** i for i in range(n, n + r - 1))
        num = _bracket_product(field, [(i, 1) for i in range(n, n + r - 1)])
        den = _bracket_product(field, [(i, q ** (n + r - 1 - i)) for i in range(1, r)])
        rhs = q ** (n + r - 1) - 1
        P = {"n": n, "r": r}
    elif family == "conj462":
        n = P["n"]
        _require(n >= 0, "conj462 requires n >= 0")
        lhs = (1, q * q - 1) + tuple((q - 1) * q ** i for i in range(2, n + 2))
        b = bracket(field, n + 2)
        num = b - one
        tail = [(i, (q - 1) * q ** (n + 1 - i)) for i in range(1, n)]
        if n >= 1:
            tail.append((n, q * q))
        den = ell(field, 1) * b * _ell_product(field, tail)
        rhs = q ** (n + 2)
        P = {"n": n}
    elif family == "conj463":
        _require(q > 2, "conj463 requires q > 2")
        n, r = P["n"], P["r"]
        _require(n >= 0, "conj463 requires n >= 0")
        _require(r >= 2, "conj463 requires r >= 2")
        lhs = ((q - 1) * q ** n - 1,) + tuple((q - 1) * q ** i for i in range(n + 1, n + r))
        num = _bracket_product(field, [(i, 1) for i in range(n + 1, n + r)])
        if r % 2 == 0:
            num = -num
        den = _bracket_product(field, [(i, (q ** (r - i) - 1) * q ** n) for i in range(1, r)])
        rhs = q ** (n + r) - q ** n - 1
        P = {"n": n, "r": r}
    else:
        raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    _require(all(x >= 1 for x in lhs), f"{family}: tuple entries must be positive, got {lhs}")
    assert sum(lhs) == rhs, (family, P, lhs, rhs)
    return IdentityCase(family, q, tuple(sorted(P.items())), tuple(lhs), rhs, num, den)


def _param_grid(family: str, q: int, max_n: int, max_r: int):
    ns = range(0, max_n + 1)
    if family == "main1":
        for n in range(1, max_n + 1):
            for s in range(1, q):
                for ks in itertools.combinations_with_replacement(range(n), s):
                    yield {"n": n, "k": ks}
    elif family == "main2":
        for n in ns:
            for s1 in range(1, q + 1):
                for s2 in range(0, q - s1 + 1):
                    for ks in itertools.combinations_with_replacement(range(n + 2), s2):
                        yield {"n": n, "s1": s1, "k": ks}
    elif family in ("main3", "main4", "main5"):
        yield {}
    elif family == "main6":
        if q > 2:
            for n in ns:
                for j in range(-1, n + 1):
                    yield {"n": n, "j": j}
    elif family in ("mainII", "conj462"):
        for n in ns:
            yield {"n": n}
    elif family == "conj461":
        for n in range(1, max_n + 1):
            for r in range(2, max_r + 1):
                yield {"n": n, "r": r}
    elif family == "conj463":
        if q > 2:
            for n in ns:
                for r in range(2, max_r + 1):
                    yield {"n": n, "r": r}
    else:
        raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def enumerate_cases(family: str, field: FieldConfig, max_n: int = 3, max_r: int = 3,
                    max_weight: int | None = None) -> list[IdentityCase]:
    """All admissible instances within the bounds, one per distinct lhs tuple."""
    seen = set()
    out = []
    for params in _param_grid(family, field.q, max_n, max_r):
        try:
            case = instantiate_case(family, params, field)
        except ParameterError:
            continue
        if max_weight is not None and case.rhs_zeta_arg > max_weight:
            continue
        if case.lhs_tuple in seen:
            continue
        seen.add(case.lhs_tuple)
        out.append(case)
    return out


def verify_case(case: IdentityCase, field: FieldConfig, prec: int = 50,
                coefficient_override: RationalFunction | None = None) -> VerificationReport:
    """Residual zeta(lhs) - c * zeta(w) to absolute precision `prec`."""
    lhs = zeta_series(field, case.lhs_tuple, prec)
    if coefficient_override is not None:
        c = coefficient_override
        vc = int(c.den.degree - c.num.degree) if not c.num.is_zero() else prec
        cser = lambda n: rational_to_series(c, n)  # noqa: E731
    else:
        vc = case.coefficient_valuation
        cser = case.coefficient_series
    if vc >= prec:
        rhs = LaurentSeries.zero(field, prec)
    else:
        z = zeta_series(field, (case.rhs_zeta_arg,), prec - vc)
        rhs = (cser(prec) * z).truncate(prec)
    diff = (lhs - rhs).truncate(prec)
    v = int(diff.valuation)
    return VerificationReport(case, v, prec, v >= prec)


def sd_claim_tuple(q: int, n: int) -> tuple:
    return (1, q - 1) + tuple((q - 1) * q ** i for i in range(1, n + 1))


def verify_sd_claim(n: int, d: int, field: FieldConfig, prec: int = 50) -> VerificationReport:
    """Level-d identity behind the arbitrary-depth theorem.

    S_d(1, q-1, ..., q^n (q-1)) = S_{d-n-1}(q^{n+1}) / (ell_{n+1} prod_{i=1..n} ell_i^{q^{n-i}(q-1)}).
    """
    q = field.q
    tup = sd_claim_tuple(q, n)
    den = ell(field, n + 1) * _ell_product(field, [(i, q ** (n - i) * (q - 1)) for i in range(1, n + 1)])
    lhs = iterated_power_sum(field, d, tup, prec)
    if d < n + 1:
        rhs = LaurentSeries.zero(field, prec)
    else:
        s = power_sum(field, d - n - 1, q ** (n + 1), prec)
        rhs = (s * LaurentSeries.from_polynomial(den).inverse(prec=prec)).truncate(prec)
    diff = (lhs - rhs).truncate(prec)
    case = IdentityCase("sd_claim", q, (("d", d), ("n", n)), tup, q ** (n + 1),
                        Polynomial.one(field), den)
    v = int(diff.valuation)
    return VerificationReport(case, v, prec, v >= prec)


def membership_lists(q: int, max_weight: int | None = None) -> dict:
    """Predicted zeta-like depth-2 tuples of the two membership conjectures."""
    conj44 = []
    for i in range(1, q + 1):
        for j in range(i, (q * q - i) // (q - 1) + 1):
            t = (i, j * (q - 1))
            if max_weight is None or sum(t) <= max_weight:
                conj44.append(t)
    conj45 = []
    if q == 2:
        bound = max_weight if max_weight is not None else 128
        cand = [(1, 1), (1, 3), (3, 5)]
        n = 0
        while 2 ** n <= bound:
            if n >= 1:
                cand.append((2 ** n - 1, 2 ** n))
            cand.append((2 ** n, 2 ** (n + 1) + 2 ** n - 1))
            n += 1
        seen = set()
        for t in cand:
            if sum(t) <= bound and t not in seen:
                seen.add(t)
                conj45.append(t)
    return {"conj44_tuples": sorted(conj44, key=lambda t: (sum(t), t)),
            "conj45_tuples": sorted(conj45, key=lambda t: (sum(t), t))}
