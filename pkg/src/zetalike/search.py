"""Exhaustive tuple search, classification and conjecture harnesses."""
from __future__ import annotations

import json
import math
import os
import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field, replace
from typing import Callable, Iterable, Iterator, Optional

from .algebra import FieldConfig, RationalFunction
from .carlitz import DEFAULT_BUDGET, BudgetExceeded
from .identities import THEOREM_FAMILIES, enumerate_cases
from .multizeta import (DEFAULT_PRECISION, as_tuple, is_primitive, level_bound, primitive_reduce,
                        zeta_ratio)
from .rationality import detect_rational

STATUSES = ("eulerian", "zeta_like", "not_detected")


@dataclass(frozen=True)
class SearchConfig:
    field: FieldConfig
    depth: int
    max_weight: int
    restricted: bool = False
    primitive_only: bool = True
    precision: int = DEFAULT_PRECISION
    # 'scaled' raises the working precision with weight and depth so that
    # long convergents stay observable; 'fixed' uses `precision` as is
    precision_policy: str = "scaled"
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    min_weight: int = 0

    def __post_init__(self):
        if self.depth < 2:
            raise ValueError("search depth must be >= 2")
        if self.precision_policy not in ("scaled", "fixed"):
            raise ValueError("precision_policy must be 'scaled' or 'fixed'")

    @property
    def q(self) -> int:
        return self.field.q

    def echo(self) -> dict:
        f = self.field
        return {"q": f.q, "p": f.p, "s": f.s, "modulus": list(f.modulus), "depth": self.depth,
                "max_weight": self.max_weight, "restricted": self.restricted,
                "primitive_only": self.primitive_only, "precision": self.precision,
                "precision_policy": self.precision_policy, "budget": self.budget,
                "min_weight": self.min_weight}


@dataclass
class ClassificationRecord:
    tuple: tuple
    weight: int
    depth: int
    status: str
    ratio: Optional[RationalFunction] = None
    covered_by_theorem: bool = False
    precision_used: int = 0
    heuristic_flag: bool = False
    covering_case: Optional[str] = None
    note: str = ""

    @property
    def detected(self) -> bool:
        return self.status != "not_detected"

    @property
    def key(self) -> str:
        return tuple_key(self.tuple)


@dataclass
class ResultSet:
    config: SearchConfig
    records: list = dc_field(default_factory=list)

    def __post_init__(self):
        self.records.sort(key=lambda r: (r.weight, r.tuple))

    def detected(self) -> list:
        return [r for r in self.records if r.detected]

    def by_tuple(self) -> dict:
        return {r.tuple: r for r in self.records}

    @property
    def summary(self) -> dict:
        return weight_summary(self.records, self.config.field)


def tuple_key(tup) -> str:
    return "-".join(str(s) for s in tup)


# -- enumeration ---------------------------------------------------------------

def compositions(total: int, parts: int) -> Iterator[tuple]:
    """Compositions of `total` into `parts` positive entries, lexicographic."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_tuples(config: SearchConfig) -> Iterator[tuple]:
    q, p = config.q, config.field.p
    for w in range(max(config.depth, config.min_weight), config.max_weight + 1):
        for tup in compositions(w, config.depth):
            if config.restricted:
                if any(s % (q - 1) for s in tup[1:]):
                    continue
                if any(a > b for a, b in zip(tup, tup[1:])):
                    continue
            if config.primitive_only and not is_primitive(tup, p):
                continue
            yield tup


# -- classification ------------------------------------------------------------

def classification_precision(tup, q: int, base: int, policy: str = "scaled") -> int:
    """Working precision for detecting a rational zeta(tup)/zeta(w).

    Known ratios of depth r and weight w have denominators of degree up to
    about (r-1) * w * (q+1)/q; termination of the expansion needs twice that.
    The precision must also reach past the onset of the second level d_1 = r:
    below it the value equals its lowest level, a rational function, and for
    large q that alone fools a doubled-precision recheck.
    """
    if policy == "fixed":
        return base
    r, w = len(tup), sum(tup)
    return max(base, 2 * (r - 1) * math.ceil(w * (q + 1) / q) + 16, level_bound(q, r, tup) + 16)


_THEOREM_INDEX: dict = {}
_INDEX_LOCK = threading.Lock()


def theorem_index(field: FieldConfig, max_weight: int) -> dict:
    """lhs tuple -> theorem IdentityCase, for instances with weight <= max_weight."""
    key = (field, max_weight)
    with _INDEX_LOCK:
        if key in _THEOREM_INDEX:
            return _THEOREM_INDEX[key]
        q = field.q
        max_n = 1
        while q ** max_n <= max_weight:
            max_n += 1
        idx = {}
        for fam in THEOREM_FAMILIES:
            for case in enumerate_cases(fam, field, max_n=max_n, max_weight=max_weight):
                idx.setdefault(case.lhs_tuple, case)
        _THEOREM_INDEX[key] = idx
        return idx


def coverage(tup, field: FieldConfig, index: dict):
    """(case, e) with zeta(tup)/zeta(w) = coefficient^(p^e), or None."""
    if tup in index:
        return index[tup], 0
    red, e = primitive_reduce(tup, field.p)
    if e and red in index:
        return index[red], e
    return None


def classify_tuple(tup, config: SearchConfig) -> ClassificationRecord:
    tup = as_tuple(tup)
    if len(tup) < 2:
        raise ValueError("classification needs depth >= 2")
    f = config.field
    q = f.q
    w = sum(tup)
    n = classification_precision(tup, q, config.precision, config.precision_policy)
    cov = coverage(tup, f, theorem_index(f, max(w, config.max_weight)))
    rec = ClassificationRecord(tup, w, len(tup), "not_detected", precision_used=n,
                               covered_by_theorem=cov is not None,
                               covering_case=None if cov is None else cov[0].describe())
    try:
        x = zeta_ratio(f, tup, n, budget=config.budget)
        verdict = detect_rational(x, reverify=lambda m: zeta_ratio(f, tup, m, budget=config.budget))
    except BudgetExceeded as exc:
        rec.note = f"budget exhausted: {exc}"
        return rec
    if verdict.status == "rational":
        rec.ratio = verdict.ratio
        rec.status = "eulerian" if w % (q - 1) == 0 else "zeta_like"
    rec.note = verdict.reason
    return rec


# -- checkpointed search --------------------------------------------------------

def _load_checkpoint(path: str, field: FieldConfig) -> dict:
    from .records import record_from_dict

    done = {}
    if not path or not os.path.exists(path):
        return done
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                d = json.loads(line)
            except json.JSONDecodeError:
                # interrupted write; the record will be recomputed
                continue
            rec = record_from_dict(d, field)
            done[rec.tuple] = rec
    return done


_WORKER_CONFIG: Optional[SearchConfig] = None


def _init_worker(config: SearchConfig):
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _job(tup):
    return classify_tuple(tup, _WORKER_CONFIG)


def run_search(config: SearchConfig, checkpoint: Optional[str] = None,
               progress: Optional[Callable[[ClassificationRecord], None]] = None) -> ResultSet:
    """Classify every enumerated tuple; records already in `checkpoint` are reused."""
    from .records import record_to_dict

    done = _load_checkpoint(checkpoint, config.field) if checkpoint else {}
    todo = [t for t in enumerate_tuples(config) if t not in done]
    wanted = set(enumerate_tuples(config))
    out = [r for t, r in done.items() if t in wanted]
    fh = None
    if checkpoint:
        d = os.path.dirname(os.path.abspath(checkpoint))
        os.makedirs(d, exist_ok=True)
        fh = open(checkpoint, "a", encoding="utf-8")
    try:
        def sink(rec):
            out.append(rec)
            if fh is not None:
                fh.write(json.dumps(record_to_dict(rec), sort_keys=True) + "\n")
                fh.flush()
            if progress is not None:
                progress(rec)

        if config.workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(config.workers, initializer=_init_worker,
                                     initargs=(config,)) as ex:
                for rec in ex.map(_job, todo, chunksize=4):
                    sink(rec)
        else:
            for t in todo:
                sink(classify_tuple(t, config))
    finally:
        if fh is not None:
            fh.close()
    return ResultSet(config, out)


# -- conjecture harnesses ---------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    tuple: tuple
    rule: str
    detail: str


def check_tuple_restrictions(records: Iterable[ClassificationRecord], field: FieldConfig,
                             lookup: Optional[dict] = None,
                             classifier: Optional[Callable[[tuple], ClassificationRecord]] = None
                             ) -> tuple[list, list]:
    """Test detected records against the tuple-restriction conjecture.

    Returns (violations, unchecked) where unchecked lists sub-tuples whose
    status was unavailable.  `lookup` maps tuples to records (lower-depth
    tables); `classifier` is consulted for anything missing from it.
    """
    q, p = field.q, field.p
    records = list(records)
    table = dict(lookup or {})
    for r in records:
        table.setdefault(r.tuple, r)
    violations, unchecked = [], []

    def status_of(t):
        red, _ = primitive_reduce(t, p)
        for cand in (t, red):
            if cand in table:
                return table[cand].status
        if classifier is not None:
            rec = classifier(red)
            table[red] = rec
            return rec.status
        return None

    for r in records:
        if not r.detected:
            continue
        s = r.tuple
        for i in range(len(s) - 1):
            a, b = s[i], s[i + 1]
            if a > b:
                violations.append(Violation(s, "nondecreasing", f"s_{i + 1}={a} > s_{i + 2}={b}"))
            if not (q - 1) * a <= b <= (q * q - 1) * a:
                violations.append(Violation(s, "ratio_window",
                                            f"{b} outside [{(q - 1) * a}, {(q * q - 1) * a}]"))
        suffix, prefix = s[1:], s[:-1]
        if len(suffix) == 1:
            if suffix[0] % (q - 1):
                violations.append(Violation(s, "suffix_eulerian", f"({suffix[0]}) weight not even"))
        else:
            st = status_of(suffix)
            if st is None:
                unchecked.append(suffix)
            elif st != "eulerian":
                violations.append(Violation(s, "suffix_eulerian", f"{suffix} is {st}"))
        if len(prefix) >= 2:
            st = status_of(prefix)
            if st is None:
                unchecked.append(prefix)
            elif st == "not_detected":
                violations.append(Violation(s, "prefix_zeta_like", f"{prefix} is {st}"))
    return violations, unchecked


class SpliceError(ValueError):
    pass


def _is_two_power_or_minus_one(w: int) -> bool:
    return w >= 1 and ((w & (w - 1)) == 0 or ((w + 1) & w) == 0)


@dataclass
class SpliceResult:
    spliced: tuple
    record: ClassificationRecord
    predicted_zeta_like: bool

    @property
    def conforms(self) -> bool:
        return self.record.detected == self.predicted_zeta_like


def splice_check(t1, t2, config: SearchConfig,
                 known: Optional[dict] = None) -> SpliceResult:
    """Classify the splice of two zeta-like tuples sharing an end entry (q = 2)."""
    t1, t2 = as_tuple(t1), as_tuple(t2)
    if config.q != 2:
        raise SpliceError("splicing is only stated for q = 2")
    if t1[-1] != t2[0]:
        raise SpliceError(f"last entry of {t1} differs from first entry of {t2}")
    spliced = t1 + t2[1:]
    w = sum(spliced)
    if not _is_two_power_or_minus_one(w):
        raise SpliceError(f"spliced weight {w} is neither a power of 2 nor one less")
    cfg = replace(config, depth=len(spliced), max_weight=max(w, config.max_weight))
    known = known or {}
    for t in (t1, t2):
        rec = known.get(t) or classify_tuple(t, replace(config, depth=len(t)))
        if not rec.detected:
            raise SpliceError(f"{t} is not zeta-like")
    predicted = not (t1 == (1, 1) and t2 == (1, 1))
    rec = known.get(spliced) or classify_tuple(spliced, cfg)
    return SpliceResult(spliced, rec, predicted)


def _digits(n: int, b: int) -> list:
    out = []
    while n:
        n, r = divmod(n, b)
        out.append(r)
    return out


def is_eulerian_weight_form(w: int, p: int, q: int) -> bool:
    """w = p^m (q^k - 1) for some m >= 0, k >= 1."""
    while w > 0:
        if _is_q_power(w + 1, q):
            return True
        if w % p:
            return False
        w //= p
    return False


def _is_q_power(n: int, q: int) -> bool:
    if n < q:
        return False
    while n % q == 0:
        n //= q
    return n == 1


def is_zeta_like_weight_form(w: int, p: int) -> bool:
    """w = p^m * n with n free of zero digits and at most one digit 1 (base p)."""
    while w % p == 0:
        w //= p
    d = _digits(w, p)
    return 0 not in d and d.count(1) <= 1


def is_primitive_eulerian_weight(w: int, q: int) -> bool:
    if q == 2:
        return _is_q_power(w, 2) or _is_q_power(w + 1, 2)
    return w == q * (q - 1) or _is_q_power(w + 1, q)


def weight_summary(records: Iterable[ClassificationRecord], field: FieldConfig) -> dict:
    """Distinct eulerian / zeta-like weights per depth, with weight-conjecture checks."""
    p, q = field.p, field.q
    by_depth: dict = {}
    for r in records:
        if not r.detected:
            continue
        slot = by_depth.setdefault(r.depth, {"eulerian": set(), "zeta_like": set(), "primitive_eulerian": set()})
        slot[r.status].add(r.weight)
        if r.status == "eulerian" and is_primitive(r.tuple, p):
            slot["primitive_eulerian"].add(r.weight)
    rows = []
    for depth in sorted(by_depth):
        slot = by_depth[depth]
        eul = sorted(slot["eulerian"])
        zl = sorted(slot["zeta_like"])
        allw = sorted(set(eul) | set(zl))
        checks = {
            "eulerian_weight_form": all(is_eulerian_weight_form(w, p, q) for w in eul),
            "primitive_eulerian_weight_form": all(is_primitive_eulerian_weight(w, q)
                                                  for w in slot["primitive_eulerian"]),
            "zeta_like_digit_form": (all(is_zeta_like_weight_form(w, p) for w in zl)
                                     if q == p else None),
            "smallest_zeta_like_weight": (allw[0] == q ** (depth - 1)) if allw else None,
            "smallest_eulerian_weight": (None if q == 2 or not eul else
                                         eul[0] == (q * (q - 1) if depth == 2 else q ** depth - 1)),
            "no_primitive_q_power_weight": _q_power_weight_check(
                [r for r in records if r.detected and r.depth == depth and is_primitive(r.tuple, p)],
                q, depth),
        }
        rows.append({"q": q, "depth": depth, "eulerian_weights": eul,
                     "zeta_like_weights": zl, "checks": checks})
    return {"rows": rows}


def _q_power_weight_check(records, q: int, depth: int) -> bool:
    for r in records:
        w = r.weight
        k = 0
        while q ** k < w:
            k += 1
        if q ** k != w:
            continue
        if (depth > 3 and k > depth) or (depth in (2, 3) and k > 3):
            return False
    return True
