"""Exhaustive depth-first enumeration of symmetric circuit codes with long bit runs.

Every symmetric code T = (h, h) with a bit run of length r can be rotated so
that the run starts at index 0 (rotation keeps period N/2) and relabeled in
first-occurrence order (an isomorphism). The search therefore fixes
h = (1, ..., r, ...) and only introduces new labels in increasing order.
Complete sequences are verified in full and deduplicated by canonical form.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import kernels
from .construct import is_family
from .core import TransitionSequence, is_symmetric, max_bit_run
from .errors import ConfigError, SearchAborted
from .isomorphism import canonical_key
from .oracle import MAX_DIMENSION, verify_spread_bruteforce


class Reject(str, enum.Enum):
    BITRUN = "BitRunViolation"
    DELTA_FLOOR = "DeltaFloorViolation"
    OVERLAP = "OverlapBound"
    UNUSED_LABEL = "UnusedLabelOrder"


_KERNEL_REASONS = {
    kernels.BITRUN_VIOLATION: Reject.BITRUN,
    kernels.DELTA_FLOOR_VIOLATION: Reject.DELTA_FLOOR,
}


@dataclass(frozen=True)
class PruneFlags:
    prefix: bool = True
    windows: bool = True
    overlap: bool = True
    unused: bool = True

    def without(self, name: str) -> PruneFlags:
        return replace(self, **{name: False})


@dataclass(frozen=True)
class SearchConfig:
    d: int
    k: int
    r: int
    n_min: int
    n_max: int
    prune: PruneFlags = PruneFlags()
    workers: int = 1
    symmetric: bool = True
    max_nodes: int | None = None

    @classmethod
    def create(
        cls,
        d: int,
        k: int,
        r: int,
        n_min: int | None = None,
        n_max: int | None = None,
        **kwargs,
    ) -> SearchConfig:
        """Fill in the length range for family instances (4k+2l .. 4k+2l+2)."""
        if n_min is None or n_max is None:
            if not is_family(d, k, r):
                raise ConfigError(
                    f"(d={d}, k={k}, r={r}) is not a long-bit-run family instance; "
                    "give n_min and n_max explicitly"
                )
            base = 4 * k + 2 * (r - k)
            n_min = base if n_min is None else n_min
            n_max = base + 2 if n_max is None else n_max
        cfg = cls(d, k, r, n_min, n_max, **kwargs)
        cfg.validate()
        return cfg

    @property
    def l(self) -> int:
        return self.r - self.k

    def lengths(self) -> range:
        return range(self.n_min, self.n_max + 1, 2)

    def validate(self) -> None:
        if self.d < 1 or self.k < 1 or self.r < 1:
            raise ConfigError("d, k and r must be positive")
        if self.d > MAX_DIMENSION:
            raise ConfigError(f"d={self.d} exceeds {MAX_DIMENSION}")
        if self.r > self.d:
            raise ConfigError(f"a bit run of length r={self.r} needs d >= r")
        if self.n_min % 2 or self.n_max % 2:
            raise ConfigError("target lengths must be even")
        if not 4 <= self.n_min <= self.n_max:
            raise ConfigError(f"need 4 <= n_min <= n_max, got {self.n_min}..{self.n_max}")
        if self.r > self.n_min:
            raise ConfigError(f"bit run r={self.r} longer than n_min={self.n_min}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


@dataclass
class SearchState:
    """Partial sequence under construction.

    ``seq[:depth]`` is fixed. For symmetric search ``seq`` is the half h and
    the code is (h, h); otherwise it is the whole code.
    """

    seq: np.ndarray
    depth: int
    k: int
    d: int
    r: int
    n_total: int
    prefix_fixed: bool
    occupancy: np.ndarray

    @classmethod
    def start(cls, config: SearchConfig, n: int) -> SearchState:
        period = n // 2 if config.symmetric else n
        seq = np.zeros(period, dtype=np.int64)
        occ = np.zeros(config.d + 1, dtype=np.int64)
        depth = 0
        if config.prune.prefix:
            seq[: config.r] = np.arange(1, config.r + 1)
            occ[1 : config.r + 1] = 1
            depth = config.r
        return cls(seq, depth, config.k, config.d, config.r, n, config.prune.prefix, occ)

    @classmethod
    def from_prefix(
        cls, prefix, k: int, d: int, r: int, n_total: int, symmetric: bool = True
    ) -> SearchState:
        period = n_total // 2 if symmetric else n_total
        seq = np.zeros(period, dtype=np.int64)
        seq[: len(prefix)] = prefix
        occ = np.bincount(np.asarray(prefix, dtype=np.int64), minlength=d + 1)
        fixed = len(prefix) >= r and list(prefix[:r]) == list(range(1, r + 1))
        return cls(seq, len(prefix), k, d, r, n_total, fixed, occ)

    @property
    def period(self) -> int:
        return self.seq.shape[0]

    @property
    def filled(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.seq[: self.depth])

    def push(self, label: int) -> None:
        self.seq[self.depth] = label
        self.occupancy[label] += 1
        self.depth += 1

    def pop(self) -> None:
        self.depth -= 1
        self.occupancy[self.seq[self.depth]] -= 1

    def full_sequence(self) -> np.ndarray:
        if self.period == self.n_total:
            return self.seq.copy()
        return np.concatenate((self.seq, self.seq))


def prune_window(state: SearchState, candidate: int) -> Reject | None:
    """Reject if placing ``candidate`` at the next position breaks a determined window.

    Checked windows: every window ending at the new position inside the
    filled prefix, and short windows that wrap from the new position into
    the already-known start of the next period.
    """
    if state.depth >= state.period:
        raise ValueError("state is already complete")
    code = kernels.node_check(
        state.seq, state.depth, candidate, state.k, state.n_total, state.period, state.d
    )
    return _KERNEL_REASONS.get(code)


def prune_overlap(state: SearchState) -> Reject | None:
    """Overlap bounds between the prefix run (1..r) and the k-windows touching it.

    For the k transitions after the prefix, at most floor((r-q+1)/2) lie in
    [q, r]; for the last k transitions of the period, at most floor(s/2) lie
    in [1, s]. Only windows short enough to fall under the delta >= k floor
    are used, and partially filled windows are bounded by what is known.
    """
    if not state.prefix_fixed:
        return None
    ok = kernels.overlap_ok(
        state.seq, state.depth, state.k, state.r, state.n_total, state.period
    )
    return None if ok else Reject.OVERLAP


def symmetry_break_unused(state: SearchState, candidate: int) -> Reject | None:
    """A never-used label is only allowed if it is the smallest never-used label."""
    if state.occupancy[candidate] > 0:
        return None
    unused = np.flatnonzero(state.occupancy[1:] == 0)
    if unused.size and candidate != int(unused[0]) + 1:
        return Reject.UNUSED_LABEL
    return None


@dataclass
class LengthResult:
    n: int
    completions: int = 0
    classes: list[tuple[int, ...]] = field(default_factory=list)
    nodes: int = 0
    pruned: dict[str, int] = field(default_factory=dict)
    exhaustive: bool = True


@dataclass
class SearchReport:
    config: SearchConfig
    per_length: dict[int, LengthResult]
    seconds: float = 0.0

    @property
    def exhaustive(self) -> bool:
        return all(res.exhaustive for res in self.per_length.values())

    @property
    def best_n(self) -> int | None:
        found = [n for n, res in self.per_length.items() if res.classes]
        return max(found) if found else None

    @property
    def nodes(self) -> int:
        return sum(res.nodes for res in self.per_length.values())

    @property
    def pruned(self) -> dict[str, int]:
        total: dict[str, int] = {}
        for res in self.per_length.values():
            for key, v in res.pruned.items():
                total[key] = total.get(key, 0) + v
        return total

    def class_set(self, n: int) -> set[tuple[int, ...]]:
        return set(self.per_length[n].classes)


class _Budget(Exception):
    pass


_COUNTER_SLOTS = {
    kernels.CNT_BITRUN: Reject.BITRUN,
    kernels.CNT_DELTA: Reject.DELTA_FLOOR,
    kernels.CNT_OVERLAP: Reject.OVERLAP,
    kernels.CNT_UNUSED: Reject.UNUSED_LABEL,
}


class _Walker:
    """Python depth-first walker built on the public prune functions.

    Used when numba is disabled; the compiled path runs the same checks in
    the same order inside :func:`kernels.dfs_numba`.
    """

    def __init__(self, config: SearchConfig, n: int):
        self.config = config
        self.state = SearchState.start(config, n)
        self.nodes = 0
        self.pruned: dict[str, int] = {}
        self.leaves: list[np.ndarray] = []

    def _reject(self, reason: Reject) -> None:
        self.pruned[reason.value] = self.pruned.get(reason.value, 0) + 1

    def candidates(self) -> list[int]:
        st = self.state
        flags = self.config.prune
        out = []
        for cand in range(1, st.d + 1):
            if flags.unused:
                why = symmetry_break_unused(st, cand)
                if why is not None:
                    self._reject(why)
                    continue
            if flags.windows:
                why = prune_window(st, cand)
                if why is not None:
                    self._reject(why)
                    continue
            if flags.overlap:
                st.push(cand)
                why = prune_overlap(st)
                st.pop()
                if why is not None:
                    self._reject(why)
                    continue
            out.append(cand)
        return out

    def run(self, first: int | None = None) -> None:
        if first is not None:
            self.state.push(first)
            self.nodes += 1
        self._descend()

    def _descend(self) -> None:
        st = self.state
        if st.depth == st.period:
            full = st.full_sequence()
            if kernels.core_scan(full, self.config.k)[0] == kernels.OK:
                self.leaves.append(st.seq.copy())
            return
        cap = self.config.max_nodes
        for cand in self.candidates():
            self.nodes += 1
            if cap is not None and self.nodes > cap:
                raise _Budget
            st.push(cand)
            self._descend()
            st.pop()


def _run_branch(config: SearchConfig, n: int, first: int | None):
    """Search one subtree; returns (leaf periods, nodes, prune counts, exhaustive)."""
    if kernels.USE_NUMBA:
        st = SearchState.start(config, n)
        flags = config.prune
        leaves, nodes, counts, aborted = kernels.dfs_numba(
            st.seq, st.depth, first or 0, config.k, config.d, config.r, n,
            flags.windows, flags.overlap, flags.unused, st.prefix_fixed, config.max_nodes,
        )
        pruned = {
            reason.value: int(counts[slot])
            for slot, reason in _COUNTER_SLOTS.items()
            if counts[slot]
        }
        return leaves, nodes, pruned, not aborted
    walker = _Walker(config, n)
    try:
        walker.run(first)
    except _Budget:
        return walker.leaves, walker.nodes, walker.pruned, False
    return walker.leaves, walker.nodes, walker.pruned, True


def _first_choices(config: SearchConfig, n: int) -> tuple[list[int], dict[str, int]]:
    root = _Walker(config, n)
    if root.state.depth == root.state.period:
        return [], {}
    return root.candidates(), root.pruned


def _search_length(config: SearchConfig, n: int, pool) -> LengthResult:
    result = LengthResult(n)
    period = n // 2 if config.symmetric else n
    if config.prune.prefix and config.r > period:
        return result
    firsts, root_pruned = _first_choices(config, n) if pool is not None else ([], {})
    if firsts:
        for key, v in root_pruned.items():
            result.pruned[key] = result.pruned.get(key, 0) + v
        futures = [pool.submit(_run_branch, config, n, c) for c in firsts]
        branches = [f.result() for f in futures]
    else:
        branches = [_run_branch(config, n, None)]

    keys: set[tuple[int, ...]] = set()
    for leaves, nodes, pruned, exhaustive in branches:
        result.nodes += nodes
        for key, v in pruned.items():
            result.pruned[key] = result.pruned.get(key, 0) + v
        result.exhaustive &= exhaustive
        for leaf in leaves:
            full = np.concatenate((leaf, leaf)) if period != n else leaf
            T = TransitionSequence(tuple(int(x) for x in full), config.d)
            # prefix normalization already guarantees the run
            if not config.prune.prefix and max_bit_run(T)[0] < config.r:
                continue
            result.completions += 1
            keys.add(canonical_key(T))
    result.classes = sorted(keys)
    return result


def _check_representatives(config: SearchConfig, result: LengthResult) -> None:
    for key in result.classes:
        T = TransitionSequence(key, config.d)
        if not verify_spread_bruteforce(T, config.k).ok:  # pragma: no cover
            raise AssertionError(f"representative {key} fails the vertex-walk check")
        if max_bit_run(T)[0] < config.r:  # pragma: no cover
            raise AssertionError(f"representative {key} lacks a bit run of {config.r}")
        if config.symmetric and not is_symmetric(T):  # pragma: no cover
            raise AssertionError(f"representative {key} is not symmetric")


def enumerate_symmetric(config: SearchConfig) -> SearchReport:
    """Enumerate all codes for each target length and group them into classes.

    Raises SearchAborted (carrying the partial report) when ``max_nodes`` is
    exceeded for some length.
    """
    config.validate()
    t0 = time.perf_counter()
    report = SearchReport(config, {})
    pool = ProcessPoolExecutor(config.workers) if config.workers > 1 else None
    try:
        for n in config.lengths():
            res = _search_length(config, n, pool)
            _check_representatives(config, res)
            report.per_length[n] = res
    finally:
        if pool is not None:
            pool.shutdown()
    report.seconds = time.perf_counter() - t0
    if not report.exhaustive:
        raise SearchAborted(f"node budget {config.max_nodes} exceeded", report)
    return report
