"""Minimum distance of linear codes over F_q.

Three routes, deliberately kept apart so each can check the others:

* :func:`exact_min_distance` walks the whole message space.  The last few
  rows are expanded once into a table of all their combinations; the
  remaining coefficients follow a reflected q-ary Gray code, so each step
  adds one scaled row to a running codeword.
* :func:`row_combo_bound` only looks at codewords built from at most ``r``
  generator rows.  It gives an upper bound ``d_b`` on ``d``.
* :func:`bz_min_distance` is the Brouwer-Zimmermann information-set search.
  Disjoint information sets give a lower bound that grows with the message
  weight enumerated; the search stops once it meets the best word found.
"""

from __future__ import annotations

import csv
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import BudgetExceededError, MissingTableEntry
from .gf import Field, in_row_space, rref
from .toric import CodeRecord, GeneratorMatrix

DEFAULT_EXACT_BUDGET = 2 ** 27
# elements per vectorised block
_BLOCK = 1 << 22


@dataclass
class DistanceResult:
    value: int
    kind: str  # "exact" or "upper_bound"
    witness: np.ndarray | None = None
    rows_used: int | None = None
    effort: int = 0
    lower_bound: int | None = None
    timed_out: bool = False

    def verify(self, G: GeneratorMatrix) -> bool:
        """The witness is a nonzero codeword of the claimed weight."""
        if self.witness is None:
            return False
        w = weight(self.witness)
        return w == self.value and w > 0 and in_row_space(G.field, G.rows, self.witness)


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def _adder(F: Field) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    if F.degree == 1:
        p = F.q

        def add(a, b):
            s = a + b
            s[s >= p] -= p
            return s

        return add
    if F.p == 2:
        return np.bitwise_xor
    table = F.add_table.astype(np.uint8)
    return lambda a, b: table[a, b]


def _codes(G: GeneratorMatrix) -> np.ndarray:
    return np.asarray(G.rows, dtype=np.uint8)


def _scaled(F: Field, rows: np.ndarray, coeffs) -> np.ndarray:
    """``out[r, c] = coeffs[c] * rows[r]``."""
    mul = F.mul_table.astype(np.uint8)
    return mul[np.asarray(coeffs)[None, :, None], rows[:, None, :]]


# --- exhaustive route -------------------------------------------------------

def _span_table(F: Field, rows: np.ndarray) -> np.ndarray:
    """All ``q**t`` combinations of ``rows``; row 0 is the most significant digit."""
    add = _adder(F)
    n = rows.shape[1]
    span = np.zeros((1, n), dtype=np.uint8)
    mults = _scaled(F, rows, range(F.q))
    for r in range(rows.shape[0]):
        span = add(span[:, None, :], mults[r][None, :, :]).reshape(-1, n)
    return span


def _gray_steps(q: int, length: int):
    """Reflected q-ary Gray code: yields ``(digit, old, new)`` for each step."""
    digits = [0] * length
    step = [1] * length
    for t in range(1, q ** length):
        i = 0
        while t % q == 0:
            t //= q
            i += 1
        old = digits[i]
        digits[i] = old + step[i]
        if digits[i] in (0, q - 1):
            step[i] = -step[i]
        yield i, old, digits[i]


def _inner_size(q: int, k: int, n: int) -> int:
    b = 0
    while b < k and q ** (b + 1) * n <= _BLOCK:
        b += 1
    return max(b, 1) if k else 0


def _message_space(G: GeneratorMatrix, normalised: bool):
    """Yield ``(codeword_block, mask)`` pairs covering the message space.

    Each block holds ``outer codeword + every inner combination``.  With
    ``normalised`` only messages whose first nonzero coefficient is 1 are
    produced (one per projective point): ``mask`` selects the valid rows of
    the block for the zero outer message.
    """
    F = G.field
    q = F.q
    rows = _codes(G)
    k, n = rows.shape
    b = _inner_size(q, k, n)
    a = k - b
    inner = _span_table(F, rows[a:])
    digits = np.array(list(itertools.product(range(q), repeat=b)), dtype=np.int16).reshape(-1, b)
    if normalised:
        lead = np.zeros(len(digits), dtype=np.int16)
        nz = digits != 0
        has = nz.any(axis=1)
        first = np.argmax(nz, axis=1)
        lead[has] = digits[has, first[has]]
        zero_mask = lead == 1
    else:
        zero_mask = np.ones(len(digits), dtype=bool)
    add = _adder(F)
    mul = F.mul_table
    yield inner, zero_mask
    full = np.ones(len(digits), dtype=bool)
    leads = range(a) if normalised else [None]
    for lead_pos in leads:
        msg = np.zeros(a, dtype=np.int16)
        if lead_pos is None:
            free = list(range(a))
            cw = np.zeros(n, dtype=np.uint8)
        else:
            free = list(range(lead_pos + 1, a))
            msg[lead_pos] = 1
            cw = rows[lead_pos].copy()
            yield add(cw[None, :], inner), full
        for i, old, new in _gray_steps(q, len(free)):
            r = free[len(free) - 1 - i]
            delta = F.add_table[new, F.neg_table[old]]
            cw = add(cw, mul[delta, rows[r]].astype(np.uint8))
            msg[r] = new
            if not msg.any():
                continue
            yield add(cw[None, :], inner), full


def exact_min_distance(G: GeneratorMatrix, budget: int = DEFAULT_EXACT_BUDGET) -> DistanceResult:
    """Exhaustive minimum distance (one message per projective point)."""
    F = G.field
    if F.q ** G.k > budget:
        raise BudgetExceededError(f"q^k = {F.q}^{G.k} exceeds the enumeration budget {budget}")
    best = G.n + 1
    witness = None
    effort = 0
    for block, mask in _message_space(G, normalised=True):
        w = np.count_nonzero(block, axis=1)
        w[~mask] = G.n + 1
        w[(block == 0).all(axis=1)] = G.n + 1
        effort += int(mask.sum())
        i = int(np.argmin(w))
        if w[i] < best:
            best = int(w[i])
            witness = block[i].astype(np.int16)
    if witness is None:
        raise ValueError("the code has no nonzero codewords")
    return DistanceResult(best, "exact", witness, G.k, effort, lower_bound=best)


def weight_distribution(G: GeneratorMatrix) -> np.ndarray:
    """Number of codewords of each weight ``0..n`` (all ``q**k`` messages)."""
    counts = np.zeros(G.n + 1, dtype=np.int64)
    for block, _ in _message_space(G, normalised=False):
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=G.n + 1)
    return counts


# --- bounded-support enumeration -------------------------------------------

class _Stop(Exception):
    pass


class _Deadline(Exception):
    pass


class _SupportSearch:
    """Enumerate codewords ``sum c_i g_{s_i}`` over supports of a fixed size.

    Supports go in lexicographic order, coefficients (in the log domain,
    ``c = eps^e``) in lexicographic order of exponents with the first one
    fixed to ``eps^0 = 1``.  Shared prefixes are summed once.
    """

    def __init__(self, F: Field, rows: np.ndarray, stop_at: int | None = None,
                 deadline: float | None = None):
        self.F = F
        self.rows = np.asarray(rows, dtype=np.uint8)
        self.k, self.n = self.rows.shape
        self.add = _adder(F)
        self.mults = _scaled(F, self.rows, F.exp_table[: F.q - 1])  # (k, q-1, n)
        self.best = self.n + 1
        self.best_word = None
        self.best_support: tuple[int, ...] = ()
        self.effort = 0
        self.stop_at = stop_at
        self.deadline = deadline

    def _record(self, wts: np.ndarray, words: Callable[[int], np.ndarray], support: Callable[[int], tuple]):
        self.effort += wts.size
        i = int(np.argmin(wts))
        if wts.flat[i] < self.best:
            self.best = int(wts.flat[i])
            self.best_word = words(i)
            self.best_support = support(i)
            if self.stop_at is not None and self.best <= self.stop_at:
                raise _Stop

    def level(self, w: int):
        k = self.k
        if w < 1 or w > k:
            return
        if w == 1:
            wts = np.count_nonzero(self.rows, axis=1)
            self._record(wts, lambda i: self.rows[i].copy(), lambda i: (i,))
            return
        for s0 in range(k - w + 1):
            self._descend((s0,), self.rows[s0][None, :], w)

    def _descend(self, prefix: tuple[int, ...], partial: np.ndarray, w: int):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Deadline
        k, n = self.k, self.n
        t = len(prefix)
        if t == w - 1:
            cand = np.arange(prefix[-1] + 1, k)
            c = partial.shape[0]
            q1 = self.F.q - 1
            step = max(1, _BLOCK // (c * q1 * n))
            for lo in range(0, len(cand), step):
                part = cand[lo:lo + step]
                block = self.add(partial[None, :, None, :], self.mults[part][:, None, :, :])
                wts = np.count_nonzero(block, axis=-1)
                self._record(
                    wts,
                    lambda i, block=block: block.reshape(-1, n)[i].copy(),
                    lambda i, part=part, c=c: prefix + (int(part[i // (c * q1)]),),
                )
            return
        for s in range(prefix[-1] + 1, k - (w - t) + 1):
            nxt = self.add(partial[:, None, :], self.mults[s][None, :, :]).reshape(-1, n)
            self._descend(prefix + (s,), nxt, w)


def row_combo_bound(G: GeneratorMatrix, r: int, stop_below: int | None = None,
                    floor: int = 1, budget: int = DEFAULT_EXACT_BUDGET) -> DistanceResult:
    """``d_b(r)``: least weight of a nonzero codeword built from at most ``r`` rows.

    The search stops early once the value reaches ``floor`` (a proven lower
    bound on ``d``) or drops below ``stop_below``.  With ``r >= k`` every
    codeword qualifies and the exact distance is returned.
    """
    if r < 1:
        raise ValueError("row budget must be at least 1")
    if r >= G.k:
        if G.field.q ** G.k <= budget:
            res = exact_min_distance(G, budget)
        else:
            res = bz_min_distance(G)
        res.rows_used = G.k if res.rows_used is None else res.rows_used
        return res
    stop = floor if stop_below is None else max(floor, stop_below - 1)
    search = _SupportSearch(G.field, _codes(G), stop_at=stop)
    try:
        for w in range(1, r + 1):
            search.level(w)
    except _Stop:
        pass
    return DistanceResult(search.best, "upper_bound", search.best_word.astype(np.int16),
                          len(search.best_support), search.effort)


def rows_needed_to_disqualify(G: GeneratorMatrix, target: int, r_max: int) -> int | None:
    """Smallest ``r <= r_max`` with ``d_b(r) < target``, or None."""
    if target < 1:
        raise ValueError("target must be positive")
    search = _SupportSearch(G.field, _codes(G), stop_at=target - 1)
    try:
        for w in range(1, min(r_max, G.k) + 1):
            search.level(w)
    except _Stop:
        return len(search.best_support)
    return None


# --- Brouwer-Zimmermann -----------------------------------------------------

def information_sets(G: GeneratorMatrix) -> list[tuple[np.ndarray, int, list[int]]]:
    """Generator matrices systematic on disjoint column sets, with their
    ranks and pivot columns.

    Matrix ``j`` has the identity on its ``r_j`` pivot columns in its first
    ``r_j`` rows and zeros there in the remaining rows.
    """
    F = G.field
    remaining = list(range(G.n))
    out = []
    while remaining:
        R, piv = rref(F, G.rows, columns=remaining)
        if not piv:
            break
        out.append((R, len(piv), piv))
        used = set(piv)
        remaining = [c for c in remaining if c not in used]
    return out


def _bz_lower_bound(sets, done, k) -> int:
    return sum(max(0, w + 1 - (k - r)) for (_, r, _), w in zip(sets, done))


def bz_min_distance(G: GeneratorMatrix, time_budget: float | None = None,
                    target: int | None = None) -> DistanceResult:
    """Brouwer-Zimmermann minimum distance.

    ``time_budget`` (seconds) bounds the run; on expiry the best bounds so
    far are returned with ``timed_out`` set.  With ``target`` the search also
    stops as soon as a word of weight below ``target`` is found.
    """
    F = G.field
    k = G.k
    sets = information_sets(G)
    if not sets or sets[0][1] != k:
        raise ValueError("generator matrix must have full row rank")
    deadline = None if time_budget is None else time.monotonic() + time_budget
    stop = None if target is None else target - 1
    searches = [_SupportSearch(F, R, stop_at=stop, deadline=deadline) for R, _, _ in sets]
    done = [0] * len(sets)

    def result(kind, timed_out=False):
        best = min(searches, key=lambda s: s.best)
        lb = _bz_lower_bound(sets, done, k)
        value = best.best
        return DistanceResult(value, kind, None if best.best_word is None else best.best_word.astype(np.int16),
                              len(best.best_support) or None, sum(s.effort for s in searches),
                              lower_bound=min(lb, value), timed_out=timed_out)

    def ub():
        return min(s.best for s in searches)

    try:
        for w in range(1, k + 1):
            for j, (_, r, _) in enumerate(sets):
                if w + 1 - (k - r) <= 0:
                    continue
                searches[j].level(w)
                done[j] = w
                if _bz_lower_bound(sets, done, k) >= ub():
                    return result("exact")
    except _Stop:
        return result("upper_bound")
    except _Deadline:
        return result("upper_bound", timed_out=True)
    return result("exact")


# --- champion bookkeeping ---------------------------------------------------

@dataclass
class KnownDistanceTable:
    """Best known minimum distances keyed by ``(q, n, k)``.

    ``upper`` holds optional theoretical maxima for the same keys.
    """

    entries: dict[tuple[int, int, int], int] = field(default_factory=dict)
    upper: dict[tuple[int, int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (q, n, k), d in self.entries.items():
            if not 0 < d <= n:
                raise ValueError(f"invalid best known distance {d} for [{n},{k}] over F_{q}")

    @classmethod
    def load(cls, path) -> "KnownDistanceTable":
        """Read ``q,n,k,d`` rows, with an optional fifth column ``d_max``."""
        entries, upper = {}, {}
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                key = (int(row["q"]), int(row["n"]), int(row["k"]))
                entries[key] = int(row["d"])
                if row.get("d_max"):
                    upper[key] = int(row["d_max"])
        return cls(entries, upper)

    def best(self, q: int, n: int, k: int) -> int:
        try:
            return self.entries[(q, n, k)]
        except KeyError:
            raise MissingTableEntry(f"no best known distance for [{n},{k}] over F_{q}") from None

    def maximum(self, q: int, n: int, k: int) -> int:
        return self.upper.get((q, n, k), n - k + 1)


def classify_record(rec: CodeRecord, table: KnownDistanceTable) -> CodeRecord:
    """Compare a record with the best known distance for its parameters."""
    best = table.best(rec.q, rec.n, rec.k)
    cap = table.maximum(rec.q, rec.n, rec.k)
    if rec.d_exact is not None and rec.d_exact > cap:
        raise ValueError(f"distance {rec.d_exact} exceeds the theoretical maximum {cap}")
    if rec.d_exact is not None:
        if rec.d_exact > best:
            rec.status = "champion"
        elif rec.d_exact == best:
            rec.status = "equal-champion"
        else:
            rec.status = "below"
    elif rec.d_bound is not None and rec.d_bound < best:
        rec.status = "below"
    else:
        rec.status = "undetermined"
    return rec


def singleton_bound(n: int, k: int) -> int:
    return n - k + 1


def combinations_count(k: int, r: int, q: int) -> int:
    """Codewords examined by ``row_combo_bound(G, r)`` without early exit."""
    return sum(math.comb(k, w) * (q - 1) ** (w - 1) for w in range(1, min(r, k) + 1))
