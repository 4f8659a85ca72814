"""Artin continued fractions and rationality detection for truncated series.

A truncated expansion of a rational function P/Q shows its partial quotients
up to total degree deg Q, followed either by exact termination or by one
abnormally large quotient whose size reflects the remaining precision.  The
convergent just before that quotient is the candidate; it is accepted only if
it survives recomputation at doubled precision.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

from .algebra import LaurentSeries, Polynomial, RationalFunction, rational_to_series

SPIKE_FLOOR = 8


@dataclass
class ContinuedFraction:
    partial_quotients: list
    convergents: list  # (p_k, q_k) polynomial pairs
    consumed_precision: int
    stop: str  # 'exact', 'exhausted' or 'max_quotients'
    # valuation of the remainder after each quotient, i.e. the degree of the
    # next quotient (None when the remainder vanished to precision)
    next_degrees: list = dc_field(default_factory=list)

    def convergent(self, k: int) -> RationalFunction:
        p, q = self.convergents[k]
        return RationalFunction(p, q)

    @property
    def degrees(self) -> list[int]:
        return [int(a.degree) if not a.is_zero() else -1 for a in self.partial_quotients]


def continued_fraction(x: LaurentSeries, max_quotients: Optional[int] = None) -> ContinuedFraction:
    f = x.field
    if x.prec is None:
        raise ValueError("continued_fraction needs a truncated series")
    n = x.prec
    if n < 1:
        raise ValueError("precision must be >= 1")
    quotients: list = []
    convs: list = []
    nexts: list = []
    # (p_{k-2}, p_{k-1}) and (q_{k-2}, q_{k-1}) starting from k = 0
    p_prev, p_cur = Polynomial.zero(f), Polynomial.one(f)
    q_prev, q_cur = Polynomial.one(f), Polynomial.zero(f)
    cum = 0
    stop = "exhausted"
    xk = x
    while True:
        if xk.prec is None or xk.prec < 1:
            break
        a = xk.polynomial_part()
        quotients.append(a)
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        convs.append((p_cur, q_cur))
        if len(quotients) > 1:
            cum += int(a.degree)
        rem = (xk - LaurentSeries.from_polynomial(a)).truncate(xk.prec)
        if rem.is_zero():
            nexts.append(None)
            stop = "exact"
            break
        nexts.append(rem.valuation)
        if cum >= n // 2:
            break
        if max_quotients is not None and len(quotients) >= max_quotients:
            stop = "max_quotients"
            break
        xk = rem.inverse()
    return ContinuedFraction(quotients, convs, 2 * cum, stop, nexts)


def reconstruct_at_spike(cf: ContinuedFraction, k: int) -> RationalFunction:
    """Convergent p_{k-1}/q_{k-1}, reduced with monic denominator."""
    if not 1 <= k <= len(cf.convergents):
        raise IndexError(f"k={k} outside 1..{len(cf.convergents)}")
    return cf.convergent(k - 1)


@dataclass
class RationalityVerdict:
    status: str  # 'rational' or 'not_detected'
    ratio: Optional[RationalFunction] = None
    stable_quotients: int = 0
    spike_degree: Optional[int] = None
    precisions_used: tuple = ()
    reason: str = ""


def spike_candidates(cf: ContinuedFraction, floor: int = SPIKE_FLOOR,
                     threshold: float = 1.0) -> list[tuple[int, Optional[int]]]:
    """(convergent index, spike degree) pairs, in order of appearance.

    The quotient following convergent k has degree cf.next_degrees[k]; it is a
    spike when that degree is >= max(floor, threshold * sum of deg a_1..a_k).
    Exact termination contributes its last convergent with spike None.
    """
    out = []
    cum = 0
    for k, nd in enumerate(cf.next_degrees):
        if k >= 1:
            cum += int(cf.partial_quotients[k].degree)
        if nd is None:
            out.append((k, None))
        elif nd >= max(floor, threshold * cum):
            out.append((k, nd))
    return out


def _residual_vanishes(x: LaurentSeries, r: RationalFunction) -> bool:
    return (x - rational_to_series(r, x.prec)).truncate(x.prec).is_zero()


def detect_rational(x: LaurentSeries, reverify: Optional[Callable[[int], LaurentSeries]] = None,
                    floor: int = SPIKE_FLOOR, threshold: float = 1.0,
                    max_quotients: Optional[int] = None) -> RationalityVerdict:
    """Look for a rational function behind the truncated series x.

    `reverify(n)` recomputes the same quantity at precision n; when given, a
    candidate must match at precision 2N: identical leading partial quotients
    and a residual that vanishes to the new precision.
    """
    n = x.prec
    cf = continued_fraction(x, max_quotients)
    cands = spike_candidates(cf, floor, threshold)
    if not cands:
        return RationalityVerdict("not_detected", precisions_used=(n,),
                                  reason=f"no spike among {len(cf.partial_quotients)} quotients")
    x2 = cf2 = None
    for k, spike in cands:
        ratio = cf.convergent(k)
        if spike is None and not _residual_vanishes(x, ratio):
            continue
        if reverify is None:
            if spike is not None:
                continue
            return RationalityVerdict("rational", ratio, k + 1, spike, (n,),
                                      "residual vanishes; not re-verified")
        if x2 is None:
            x2 = reverify(2 * n)
            cf2 = continued_fraction(x2, max_quotients)
        if len(cf2.partial_quotients) <= k:
            continue
        if any(a != b for a, b in zip(cf.partial_quotients[:k + 1], cf2.partial_quotients[:k + 1])):
            continue
        if _residual_vanishes(x2, ratio):
            return RationalityVerdict("rational", ratio, k + 1, spike, (n, 2 * n),
                                      "stable at doubled precision")
    return RationalityVerdict("not_detected", precisions_used=(n,) if x2 is None else (n, 2 * n),
                              reason=f"{len(cands)} candidate(s) rejected")
