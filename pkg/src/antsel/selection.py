"""Receive antenna-subset selection algorithms.

All selectors maximize log2 det(I + rho_bar * G) over row subsets of size
l, where G is the Gram matrix of the selected rows. They return a
SelectionResult with the chosen indices (ascending), the achieved capacity
recomputed through :func:`antsel.capacity.capacity` for bit-exact
consistency across algorithms, and a visited-node count that measures the
search effort.

The adaptive selector interleaves CSI acquisition with selection: rows are
revealed in batches and an inner selector runs on the revealed set until a
target capacity is met or the matrix is exhausted.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .capacity import capacity
from .channel import RngStream, row_norms_sq

__all__ = [
    "CapacityBudgetError",
    "SelectionResult",
    "AdaptiveConfig",
    "AdaptiveOutcome",
    "exhaustive_select",
    "greedy_select",
    "bab_select",
    "norm_select",
    "adaptive_select",
    "SELECTORS",
]

_LN2 = math.log(2.0)

DEFAULT_SUBSET_GUARD = 10_000_000


class CapacityBudgetError(ValueError):
    """Raised when an exhaustive enumeration would exceed the subset guard."""


@dataclass(frozen=True)
class SelectionResult:
    """Outcome of one subset selection.

    ``csi_rows_used`` is the number of channel rows the algorithm observed
    (the full matrix for the one-shot selectors).
    """

    indices: tuple[int, ...]
    capacity_bits: float
    visited_nodes: int
    csi_rows_used: int


@dataclass(frozen=True)
class AdaptiveConfig:
    """Parameters of the adaptive acquire-then-select loop."""

    target_capacity: float
    batch_size: int
    inner_selector: str  # "exhaustive" | "bab" | "greedy"
    l: int
    rho_bar: float

    def __post_init__(self):
        if self.target_capacity <= 0:
            raise ValueError(f"target_capacity must be positive, got {self.target_capacity}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be a positive integer, got {self.batch_size}")
        if self.l < 1:
            raise ValueError(f"l must be a positive integer, got {self.l}")
        if self.rho_bar <= 0:
            raise ValueError(f"rho_bar must be positive, got {self.rho_bar}")
        if self.inner_selector not in ("exhaustive", "bab", "greedy"):
            raise ValueError(f"unknown inner selector: {self.inner_selector!r}")
        if self.inner_selector in ("exhaustive", "bab") and self.batch_size > self.l:
            raise ValueError(
                "batch_size cannot exceed l (the RF chains do the acquisition) "
                f"for the {self.inner_selector} inner selector"
            )


@dataclass(frozen=True)
class AdaptiveOutcome:
    """Trace and result of an adaptive selection run.

    ``trace`` holds one (step, rows_acquired, capacity) tuple per
    acquisition step; capacities are nondecreasing because the candidate
    set only grows.
    """

    csi_rows_used: int
    indices: tuple[int, ...]
    capacity_bits: float
    trace: tuple[tuple[int, int, float], ...]
    reached: bool
    visited_nodes: int


def _validate(h: np.ndarray, l: int, rho_bar: float) -> np.ndarray:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] == 0 or h.shape[1] == 0:
        raise ValueError(f"channel matrix must be 2-D and nonempty, got shape {h.shape}")
    if not 1 <= l <= h.shape[0]:
        raise ValueError(f"need 1 <= l <= nr={h.shape[0]}, got l={l}")
    if rho_bar <= 0:
        raise ValueError(f"rho_bar must be positive, got {rho_bar}")
    return h


@lru_cache(maxsize=8)
def _combinations(nr: int, l: int) -> np.ndarray:
    combos = np.array(list(itertools.combinations(range(nr), l)), dtype=np.intp)
    combos.setflags(write=False)
    return combos


def _subset_log_dets(h: np.ndarray, rho_bar: float, combos: np.ndarray) -> np.ndarray:
    """log2 det(I + rho*G) for every row subset in ``combos`` at once.

    Subset Grams are gathered from the full pairwise product H H^dagger, so
    the per-subset work is a handful of vectorized flops. Sizes up to 3 use
    explicit Hermitian determinant formulas; larger sizes fall back to
    batched slogdet in memory-bounded chunks.
    """
    l = combos.shape[1]
    p = h @ h.conj().T
    diag = 1.0 + rho_bar * np.real(np.diagonal(p))
    if l == 1:
        return np.log2(diag[combos[:, 0]])
    if l == 2:
        a = diag[combos[:, 0]]
        b = diag[combos[:, 1]]
        z = rho_bar * p[combos[:, 0], combos[:, 1]]
        return np.log2(a * b - np.abs(z) ** 2)
    if l == 3:
        a = diag[combos[:, 0]]
        b = diag[combos[:, 1]]
        c = diag[combos[:, 2]]
        z01 = rho_bar * p[combos[:, 0], combos[:, 1]]
        z02 = rho_bar * p[combos[:, 0], combos[:, 2]]
        z12 = rho_bar * p[combos[:, 1], combos[:, 2]]
        det = (
            a * b * c
            - a * np.abs(z12) ** 2
            - c * np.abs(z01) ** 2
            - b * np.abs(z02) ** 2
            + 2.0 * np.real(z01 * z12 * np.conj(z02))
        )
        return np.log2(det)

    out = np.empty(combos.shape[0])
    eye = np.eye(l, dtype=complex)
    chunk = max(1, 200_000 // (l * l))
    for s in range(0, combos.shape[0], chunk):
        cs = combos[s : s + chunk]
        g = p[cs[:, :, None], cs[:, None, :]]
        _, logdet = np.linalg.slogdet(eye + rho_bar * g)
        out[s : s + chunk] = logdet / _LN2
    return out


def exhaustive_select(
    h: np.ndarray, l: int, rho_bar: float, guard: int = DEFAULT_SUBSET_GUARD
) -> SelectionResult:
    """Globally optimal subset by full enumeration.

    Ties resolve to the lexicographically smallest index set. Refuses to
    enumerate more than ``guard`` subsets.
    """
    h = _validate(h, l, rho_bar)
    nr = h.shape[0]
    n_subsets = math.comb(nr, l)
    if n_subsets > guard:
        raise CapacityBudgetError(
            f"exhaustive search over C({nr}, {l}) = {n_subsets} subsets exceeds the guard of {guard}"
        )
    combos = _combinations(nr, l)
    caps = _subset_log_dets(h, rho_bar, combos)
    best = int(np.argmax(caps))  # first max = lexicographically smallest
    indices = tuple(int(i) for i in combos[best])
    return SelectionResult(indices, capacity(h[list(indices)], rho_bar), n_subsets, nr)


def _greedy_core(h: np.ndarray, l: int, rho_bar: float):
    """Greedy picks, final inverse, incremental capacity, visited count."""
    nr, nt = h.shape
    hc = h.conj()
    binv = np.eye(nt, dtype=complex)
    remaining = np.ones(nr, dtype=bool)
    picked: list[int] = []
    cap_bits = 0.0
    visited = 0
    for _ in range(l):
        idx = np.flatnonzero(remaining)
        gains = np.einsum("ij,jk,ik->i", h[idx], binv, hc[idx]).real
        visited += idx.size
        k = int(np.argmax(gains))  # ties: first occurrence = smallest row index
        j = int(idx[k])
        g = float(gains[k])
        cap_bits += math.log1p(rho_bar * g) / _LN2
        w = binv @ hc[j]
        binv -= rho_bar * np.outer(w, w.conj()) / (1.0 + rho_bar * g)
        remaining[j] = False
        picked.append(j)
    return picked, binv, cap_bits, visited


def greedy_select(h: np.ndarray, l: int, rho_bar: float) -> SelectionResult:
    """Near-optimal subset built one row at a time.

    Each step adds the row with the largest incremental rate
    log2(1 + rho * h B^{-1} h^dagger), where B = I + rho * (Gram of the
    rows picked so far); B^{-1} is maintained by rank-one updates. Ties go
    to the smallest row index.
    """
    h = _validate(h, l, rho_bar)
    picked, _, _, visited = _greedy_core(h, l, rho_bar)
    indices = tuple(sorted(picked))
    return SelectionResult(indices, capacity(h[list(indices)], rho_bar), visited, h.shape[0])


def norm_select(h: np.ndarray, l: int, rho_bar: float) -> SelectionResult:
    """The l rows of largest squared norm (ties to the smallest index)."""
    h = _validate(h, l, rho_bar)
    nr = h.shape[0]
    norms = row_norms_sq(h)
    order = np.lexsort((np.arange(nr), -norms))
    indices = tuple(sorted(int(i) for i in order[:l]))
    return SelectionResult(indices, capacity(h[list(indices)], rho_bar), nr, nr)


def bab_select(h: np.ndarray, l: int, rho_bar: float) -> SelectionResult:
    """Globally optimal subset by depth-first branch and bound.

    Rows are pre-sorted by descending squared norm and partial subsets are
    explored in that order. A partial subset is discarded when its capacity
    plus an optimistic completion bound - the sum of the (l - k) largest
    remaining log2(1 + rho * ||row||^2) terms, admissible because the
    log-determinant never exceeds the sum of single-row rates - does not
    exceed the incumbent. The incumbent starts at the greedy solution.

    ``visited_nodes`` counts the complete subsets whose capacity the search
    evaluates, the same unit exhaustive enumeration counts, so it is
    structurally bounded by C(nr, l); pruned branches contribute nothing.
    The greedy warm start is not included.
    """
    h = _validate(h, l, rho_bar)
    nr, nt = h.shape

    norms = row_norms_sq(h)
    order = np.lexsort((np.arange(nr), -norms))
    hs = np.ascontiguousarray(h[order])
    hsc = hs.conj()
    logs = np.log1p(rho_bar * norms[order]) / _LN2
    prefix = np.concatenate(([0.0], np.cumsum(logs)))

    g0 = _greedy_core(h, l, rho_bar)
    incumbent_cap = g0[2]
    incumbent_rows = tuple(sorted(g0[0]))
    visited = 0
    path = np.empty(l, dtype=np.intp)  # sorted-coordinate indices of the current branch

    def expand(depth: int, start: int, binv: np.ndarray, cap: float):
        nonlocal incumbent_cap, incumbent_rows, visited
        slots = l - depth
        if nr - start == slots:
            # forced completion: one leaf takes every remaining row
            rows = hs[start:]
            m = np.eye(slots, dtype=complex) + rho_bar * (rows @ binv @ rows.conj().T)
            _, logdet = np.linalg.slogdet(m)
            total = cap + float(logdet) / _LN2
            visited += 1
            if total > incumbent_cap:
                incumbent_cap = total
                path[depth:l] = np.arange(start, nr)
                incumbent_rows = tuple(sorted(int(order[i]) for i in path[:l]))
            return

        # candidate extensions start..last-1; the gain-free optimistic bound
        # cap + sum of `slots` largest remaining single-row rates is
        # non-increasing in the candidate index, so survivors form a prefix
        last = nr - slots + 1
        idx = np.arange(start, last)
        loose = cap + (prefix[idx + slots] - prefix[idx])
        keep = int(np.count_nonzero(loose > incumbent_cap))
        if keep == 0:
            return
        idx = idx[:keep]
        gains = np.einsum("ij,jk,ik->i", hs[idx], binv, hsc[idx]).real
        caps = cap + np.log1p(rho_bar * gains) / _LN2

        if slots == 1:
            # leaves: each evaluated capacity is one visited subset
            visited += idx.size
            k = int(np.argmax(caps))
            if caps[k] > incumbent_cap:
                incumbent_cap = float(caps[k])
                path[depth] = idx[k]
                incumbent_rows = tuple(sorted(int(order[i]) for i in path[: depth + 1]))
            return

        tails = prefix[idx + slots] - prefix[idx + 1]
        for k in range(idx.size):
            if caps[k] + tails[k] <= incumbent_cap:
                continue
            j = int(idx[k])
            path[depth] = j
            w = binv @ hsc[j]
            child = binv - rho_bar * np.outer(w, w.conj()) / (1.0 + rho_bar * gains[k])
            expand(depth + 1, j + 1, child, float(caps[k]))

    expand(0, 0, np.eye(nt, dtype=complex), 0.0)

    return SelectionResult(
        incumbent_rows, capacity(h[list(incumbent_rows)], rho_bar), visited, nr
    )


_INNER_SELECTORS = {
    "exhaustive": exhaustive_select,
    "bab": bab_select,
    "greedy": greedy_select,
}


def adaptive_select(
    h: np.ndarray,
    cfg: AdaptiveConfig,
    order: np.ndarray | None = None,
    rng: RngStream | None = None,
) -> AdaptiveOutcome:
    """Acquire CSI rows in batches and select until a target capacity is met.

    ``order`` fixes the acquisition sequence (a permutation of row
    indices); when omitted it is drawn uniformly from ``rng``. Each step
    reveals up to ``batch_size`` unseen rows, then runs the inner selector
    over everything revealed so far - skipped while fewer than l rows are
    known, since the RF chains cannot be filled yet. The loop stops once
    the achieved capacity reaches the target or all rows are revealed; an
    unreachable target therefore ends with the full-CSI result and
    ``reached`` False.
    """
    h = np.asarray(h)
    nr = h.shape[0]
    _validate(h, cfg.l, cfg.rho_bar)
    if order is None:
        if rng is None:
            raise ValueError("either an acquisition order or an RngStream is required")
        order = rng.gen.permutation(nr)
    order = np.asarray(order, dtype=np.intp)
    if order.shape != (nr,) or np.unique(order).size != nr:
        raise ValueError("order must be a permutation of all row indices")

    select = _INNER_SELECTORS[cfg.inner_selector]
    acquired: list[int] = []
    trace: list[tuple[int, int, float]] = []
    cap = 0.0
    best: tuple[int, ...] = ()
    visited = 0
    step = 0
    pos = 0
    while cap < cfg.target_capacity and pos < nr:
        step += 1
        batch = order[pos : pos + cfg.batch_size]
        pos += batch.size
        acquired.extend(int(i) for i in batch)
        if len(acquired) >= cfg.l:
            res = select(h[acquired], cfg.l, cfg.rho_bar)
            visited += res.visited_nodes
            # keep the best subset seen so far: its rows stay available, and
            # this keeps the trace monotone even for the greedy inner
            # selector, which is not itself monotone under set growth
            if res.capacity_bits > cap:
                cap = res.capacity_bits
                best = tuple(sorted(acquired[i] for i in res.indices))
        trace.append((step, len(acquired), cap))

    return AdaptiveOutcome(
        csi_rows_used=len(acquired),
        indices=best,
        capacity_bits=cap,
        trace=tuple(trace),
        reached=cap >= cfg.target_capacity,
        visited_nodes=visited,
    )


SELECTORS = {
    "es": exhaustive_select,
    "greedy": greedy_select,
    "bab": bab_select,
    "norm": norm_select,
}
