"""Multizeta values zeta(s_1, ..., s_r) in F_q((1/t)) to a requested precision."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import FieldConfig, LaurentSeries
from .carlitz import DEFAULT_BUDGET, iterated_power_sum, valuation_bound

DEFAULT_PRECISION = 64


def as_tuple(tup) -> tuple[int, ...]:
    if isinstance(tup, int):
        tup = (tup,)
    if isinstance(tup, str):
        tup = tuple(int(x) for x in tup.replace("-", ",").split(",") if x.strip())
    out = tuple(int(x) for x in tup)
    if not out:
        raise ValueError("tuple must have depth >= 1")
    if any(x < 1 for x in out):
        raise ValueError(f"tuple entries must be positive: {out}")
    return out


def weight(tup) -> int:
    return sum(tup)


@dataclass(frozen=True)
class ZetaApproximation:
    tuple: tuple
    value: LaurentSeries
    levels_used: int
    tail_bound_exponent: int
    heuristic: bool = False


def level_bound(q: int, d1: int, tup) -> int:
    """Lower bound for the valuation of the whole level-d1 contribution."""
    r = len(tup)
    return valuation_bound(q, d1, tup[0]) + sum(
        valuation_bound(q, r - i, s) for i, s in enumerate(tup[1:], start=2))


def zeta_value(field: FieldConfig, tup, prec: int = DEFAULT_PRECISION,
               policy: str = "bound", budget: int = DEFAULT_BUDGET,
               max_levels: int = 64) -> ZetaApproximation:
    """Sum of iterated power sums over levels d_1 = r-1, r, ...

    policy 'bound': stop at the first level whose a-priori valuation bound
    reaches `prec`; levels are increasing in the bound, so the omitted tail is
    provably zero to precision.  policy 'heuristic': stop after three
    consecutive levels that contribute nothing below `prec` (flagged).
    """
    tup = as_tuple(tup)
    if prec < 1:
        raise ValueError("precision must be >= 1")
    q = field.q
    r = len(tup)
    acc = LaurentSeries.zero(field, prec)
    d = r - 1
    quiet = 0
    heuristic = policy != "bound"
    while True:
        if policy == "bound":
            if level_bound(q, d, tup) >= prec:
                break
        elif quiet >= 3:
            break
        if d - (r - 1) >= max_levels:
            raise RuntimeError(f"zeta{tup}: no convergence within {max_levels} levels")
        term = iterated_power_sum(field, d, tup, prec, budget=budget)
        if term.is_zero():
            quiet += 1
        else:
            quiet = 0
        acc = acc + term
        d += 1
    return ZetaApproximation(tup, acc, d - 1, prec, heuristic)


def zeta_series(field: FieldConfig, tup, prec: int = DEFAULT_PRECISION, **kw) -> LaurentSeries:
    return zeta_value(field, tup, prec, **kw).value


def zeta_ratio(field: FieldConfig, tup, prec: int = DEFAULT_PRECISION, **kw) -> LaurentSeries:
    """zeta(tup) / zeta(w), exact below exponent `prec` (zeta(w) is a unit)."""
    tup = as_tuple(tup)
    if len(tup) < 2:
        raise ValueError("zeta_ratio needs depth >= 2 (depth-1 ratios are trivially 1)")
    num = zeta_series(field, tup, prec, **kw)
    den = zeta_series(field, (weight(tup),), prec, **kw)
    return (num * den.inverse()).truncate(prec)


def tuple_predicates(field: FieldConfig, tup) -> dict:
    tup = as_tuple(tup)
    p, q = field.p, field.q
    w = weight(tup)
    return {
        "is_primitive": any(s % p for s in tup),
        "is_even_weight": w % (q - 1) == 0,
        "entries_even_from_2": all(s % (q - 1) == 0 for s in tup[1:]),
        "weight": w,
        "depth": len(tup),
    }


def is_primitive(tup, p: int) -> bool:
    return any(s % p for s in tup)


def primitive_reduce(tup, p: int) -> tuple[tuple[int, ...], int]:
    """(reduced, e) with zeta(tup) = zeta(reduced)^(p^e)."""
    tup = as_tuple(tup)
    e = 0
    while not is_primitive(tup, p):
        tup = tuple(s // p for s in tup)
        e += 1
    return tup, e

