"""Batch computation over Aut-classes of character sets of ``Z/n``.

Records are persisted as JSON lines in canonical class order, one line per
class; that file is the source of truth and the resume log.  Work is split
into lex-prefix blocks of the subset order, computed independently, and
written back by a single writer in block order, so the output does not
depend on the worker count.
"""
from __future__ import annotations

import csv
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .degree import degree_invariants
from .errors import BadRange
from .formulas import (
    BoundKind,
    build_extremal_Sm,
    close_implies_equal,
    conjecture_bound,
    hard_floor,
    int_root_lower_bound,
    is_prime,
    qbr_bound,
    two_char_profile,
)
from .groups import CharacterSet, canonical_class_rep, enumerate_classes, orbit_size, split_prefixes

log = logging.getLogger(__name__)


@dataclass
class SurveyRecord:
    n: int
    m: int
    class_rep: tuple[int, ...]
    beta: int
    gamma: int
    faithful: bool
    bound_checks: dict[str, tuple[int, bool]] = field(default_factory=dict)

    @property
    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.n, self.m, self.class_rep)

    def to_json(self) -> str:
        obj = {
            "n": self.n,
            "m": self.m,
            "class": list(self.class_rep),
            "beta": self.beta,
            "gamma": self.gamma,
            "faithful": self.faithful,
            "bounds": {k: {"value": v, "ok": ok} for k, (v, ok) in self.bound_checks.items()},
        }
        return json.dumps(obj, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "SurveyRecord":
        obj = json.loads(line)
        bounds = {k: (v["value"], v["ok"]) for k, v in obj["bounds"].items()}
        return cls(obj["n"], obj["m"], tuple(obj["class"]), obj["beta"], obj["gamma"], obj["faithful"], bounds)


@dataclass
class CellResult:
    n: int
    m: int
    max_beta: int
    argmax_classes: list[tuple[int, ...]]
    class_count: int
    orbit_total: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "max_beta": self.max_beta,
            "argmax_classes": [list(c) for c in self.argmax_classes],
            "class_count": self.class_count,
            "orbit_total": self.orbit_total,
        }


def bound_checks(n: int, m: int, T: Sequence[int], beta: int, gamma: int, image: int) -> dict[str, tuple[int, bool]]:
    """Closed-form statements that apply to one class, paired with pass/fail."""
    S = CharacterSet.cyclic(n, T)
    out: dict[str, tuple[int, bool]] = {}
    out["noether"] = (n, gamma <= beta <= n)
    lo = int_root_lower_bound(image, m)
    out["mth-root"] = (lo, gamma >= lo)
    floor, _ = hard_floor(S)
    out["hard-floor"] = (floor, gamma >= floor and (gamma == 2) == (floor == 2))
    if close_implies_equal(image, m, gamma):
        out["close-to-bottom"] = (2 * image, beta == gamma)
    if m == 2:
        out["2d-equal"] = (gamma, beta == gamma)
    if is_prime(n) and n >= 3:
        out["conjecture"] = (conjecture_bound(n, m), beta <= conjecture_bound(n, m))
        if m == 2:
            prof = two_char_profile(n, *T)
            rep = qbr_bound(prof)
            exact = rep.kind is BoundKind.EXACT
            out["q+b+r-1"] = (rep.value, beta == rep.value if exact else beta <= rep.value)
            if prof.inverse_pair:
                out["inverse-pair"] = (n, beta == n)
            else:
                out["(p+3)/2"] = ((n + 3) // 2, beta <= (n + 3) // 2)
        elif m >= 3:
            out["(p+3)/2"] = ((n + 3) // 2, beta <= (n + 3) // 2)
    return out


def compute_record(n: int, m: int, T: Sequence[int]) -> SurveyRecord:
    S = CharacterSet.cyclic(n, T)
    res = degree_invariants(S)
    image, faithful = res.index, res.faithful
    checks = bound_checks(n, m, T, res.beta, res.gamma, image)
    return SurveyRecord(n, m, tuple(T), res.beta, res.gamma, faithful, checks)


def _block_task(args) -> list[SurveyRecord]:
    n, m, prefix, done = args
    return [compute_record(n, m, T) for T in enumerate_classes(n, m, prefix) if T not in done]


def default_workers() -> int:
    return os.cpu_count() or 1


def _read_prefix(path: Path) -> list[SurveyRecord]:
    """Complete records at the head of ``path``; a torn tail is truncated away."""
    if not path.exists():
        return []
    data = path.read_bytes()
    good = data.rfind(b"\n") + 1
    if good < len(data):
        log.info("truncating %d torn bytes from %s", len(data) - good, path)
        with path.open("r+b") as fh:
            fh.truncate(good)
    text = data[:good].decode()
    return [SurveyRecord.from_json(line) for line in text.splitlines() if line.strip()]


class _Stop(Exception):
    pass


def survey_cell(
    n: int,
    m: int,
    workers: int = 1,
    out: str | os.PathLike | None = None,
    resume: bool = False,
    max_records: int | None = None,
) -> tuple[CellResult, list[SurveyRecord]]:
    """All classes of m-subsets of ``Z/n``: one record each, plus the cell summary.

    With ``out`` the records are written as JSON lines; with ``resume`` the
    existing file is kept and only missing classes are computed.
    ``max_records`` stops early after writing that many new records; it
    exists to simulate interruption.
    """
    if n < 3 or not 1 <= m <= n - 1:
        raise BadRange(f"need n >= 3 and 1 <= m <= n-1, got n={n}, m={m}")
    path = Path(out) if out is not None else None
    existing: list[SurveyRecord] = []
    if path is not None and resume:
        existing = [r for r in _read_prefix(path) if (r.n, r.m) == (n, m)]
    done = {r.class_rep for r in existing}
    records = list(existing)
    prefixes = split_prefixes(n, m, 8 * max(workers, 1))
    tasks = [(n, m, P, frozenset(T for T in done if T[: len(P)] == P)) for P in prefixes]

    fh = None
    if path is not None:
        fh = path.open("a" if resume else "w")
    written = 0
    try:
        if workers > 1:
            pool = ProcessPoolExecutor(max_workers=workers)
            results = pool.map(_block_task, tasks)
        else:
            pool = None
            results = map(_block_task, tasks)
        try:
            for block in results:
                for rec in block:
                    if max_records is not None and written >= max_records:
                        raise _Stop
                    records.append(rec)
                    if fh is not None:
                        fh.write(rec.to_json() + "\n")
                    written += 1
                if fh is not None:
                    fh.flush()
        except _Stop:
            pass
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    finally:
        if fh is not None:
            fh.close()
    records.sort(key=lambda r: r.class_rep)
    return summarize(n, m, records), records


def summarize(n: int, m: int, records: Sequence[SurveyRecord]) -> CellResult:
    """Cell summary; an interrupted run with no records yet gives ``max_beta = 0``."""
    if not records:
        return CellResult(n, m, 0, [], 0, 0)
    top = max(r.beta for r in records)
    arg = [r.class_rep for r in records if r.beta == top]
    orbit_total = sum(orbit_size(n, r.class_rep) for r in records)
    return CellResult(n, m, top, arg, len(records), orbit_total)


def write_csv(records: Iterable[SurveyRecord], path: str | os.PathLike) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["n", "m", "class", "beta", "gamma", "faithful"])
        for r in records:
            w.writerow([r.n, r.m, "|".join(map(str, r.class_rep)), r.beta, r.gamma, str(r.faithful).lower()])


# --- multi-cell drivers ------------------------------------------------------


Cells = dict[tuple[int, int], list[SurveyRecord]]


def odd_primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 3), hi + 1) if is_prime(p)]


def compute_cells(pairs: Iterable[tuple[int, int]], workers: int = 1, cells: Cells | None = None) -> Cells:
    """Fill ``cells`` (a cache keyed by ``(n, m)``) for every requested pair."""
    cells = {} if cells is None else cells
    for n, m in pairs:
        if (n, m) not in cells:
            log.info("surveying cell n=%d m=%d", n, m)
            cells[(n, m)] = survey_cell(n, m, workers)[1]
    return cells


def table_pairs(primes: Sequence[int], ms: Sequence[int]) -> list[tuple[int, int]]:
    return [(p, m) for p in primes for m in ms if 1 <= m <= p - 1]


def compute_table(primes: Sequence[int], ms: Sequence[int], workers: int = 1, cells: Cells | None = None) -> dict[tuple[int, int], CellResult]:
    cells = compute_cells(table_pairs(primes, ms), workers, cells)
    return {(p, m): summarize(p, m, cells[(p, m)]) for p, m in table_pairs(primes, ms)}


def render_table(table: dict[tuple[int, int], CellResult], primes: Sequence[int], ms: Sequence[int]) -> str:
    """Text grid: one row per prime, one column per m, blanks where m >= p."""
    width = max([len(str(c.max_beta)) for c in table.values()] + [len(f"m={max(ms)}"), 3])
    lines = [" " * 6 + "".join(f"m={m}".rjust(width + 1) for m in ms)]
    for p in primes:
        cells = [str(table[(p, m)].max_beta) if (p, m) in table else "" for m in ms]
        lines.append(f"p={p}".ljust(6) + "".join(c.rjust(width + 1) for c in cells))
    return "\n".join(lines)


@dataclass(frozen=True)
class Violation:
    proposition: str
    instance: str
    lhs: int
    relation: str
    rhs: int

    def __str__(self):
        return f"{self.proposition}: {self.instance}: {self.lhs} {self.relation} {self.rhs} fails"

    def to_dict(self) -> dict:
        return {"proposition": self.proposition, "instance": self.instance, "lhs": self.lhs, "relation": self.relation, "rhs": self.rhs}


_RELATION = {
    "noether": "gamma<=beta<=",
    "mth-root": "gamma>=",
    "hard-floor": "gamma~",
    "close-to-bottom": "beta==gamma, 2|G|=",
    "2d-equal": "beta==gamma=",
    "conjecture": "beta<=",
    "q+b+r-1": "beta<=|==",
    "inverse-pair": "beta==",
    "(p+3)/2": "beta<=",
}


def _second_smallest(vals: list[int]) -> int:
    return sorted(vals)[1]


def check_propositions(
    n_max: int,
    m_max: int,
    workers: int = 1,
    cells: Cells | None = None,
) -> list[Violation]:
    """Run every proposition checker over primes ``3..n_max`` and ``m <= m_max``.

    The extremal construction is checked for every ``3 <= n <= n_max``,
    composite included.  The conjecture is not a theorem and is left to
    :func:`conjecture_scan`.  Returns the violations; an empty list is the
    expected outcome.
    """
    primes = odd_primes(3, n_max)
    pairs = table_pairs(primes, range(1, m_max + 1))
    cells = compute_cells(pairs, workers, cells)
    out: list[Violation] = []
    lookup = {(n, m): {r.class_rep: r for r in cells[(n, m)]} for n, m in pairs}
    for n, m in pairs:
        for r in cells[(n, m)]:
            inst = f"Z/{n} {list(r.class_rep)}"
            for name, (value, ok) in r.bound_checks.items():
                if name == "conjecture" or ok:
                    continue
                lhs = r.gamma if name in ("mth-root", "hard-floor") else r.beta
                out.append(Violation(name, inst, lhs, _RELATION.get(name, "?"), value))
            if m >= 3 and (n, m - 1) in lookup:
                sub = lookup[(n, m - 1)]
                pieces = [sub[canonical_class_rep(n, [t for t in r.class_rep if t != x])] for x in r.class_rep]
                # any two distinct (m-1)-subsets overlap and cover S
                bmax = _second_smallest([s.beta for s in pieces])
                if r.beta > bmax:
                    out.append(Violation("subsets-beta", inst, r.beta, "<= max over two (m-1)-subsets", bmax))
                gmax = _second_smallest([s.gamma for s in pieces])
                if r.gamma > gmax:
                    out.append(Violation("subsets-gamma", inst, r.gamma, "<= max over two (m-1)-subsets", gmax))
    for n in range(3, n_max + 1):
        for m in range(1, min(m_max, n - 1) + 1):
            S, predicted = build_extremal_Sm(n, m)
            res = degree_invariants(S)
            if not res.beta == res.gamma == predicted:
                out.append(Violation("extremal", f"Z/{n} {list(S.ints())}", res.beta, f"== gamma({res.gamma}) ==", predicted))
    return out


@dataclass(frozen=True)
class ScanEntry:
    p: int
    m: int
    max_beta: int
    bound: int
    counterexamples: tuple[tuple[int, ...], ...] = ()

    @property
    def status(self) -> str:
        return "HOLDS" if not self.counterexamples else "COUNTEREXAMPLE"

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "max_beta": self.max_beta,
            "bound": self.bound,
            "status": self.status,
            "counterexamples": [list(c) for c in self.counterexamples],
        }


def conjecture_scan(primes: Sequence[int], m_max: int, workers: int = 1, cells: Cells | None = None) -> list[ScanEntry]:
    """Compare each cell's maximum beta with ``ceil(p / ceil(m/2))``; report only."""
    pairs = table_pairs(primes, range(1, m_max + 1))
    cells = compute_cells(pairs, workers, cells)
    out = []
    for p, m in pairs:
        bound = conjecture_bound(p, m)
        recs = cells[(p, m)]
        bad = tuple(r.class_rep for r in recs if r.beta > bound)
        out.append(ScanEntry(p, m, max(r.beta for r in recs), bound, bad))
    return out
