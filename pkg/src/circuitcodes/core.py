"""Transition sequences, segment parity, spread verification and bit-run analysis."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import NotACircuit, NotSimpleCycle, PreconditionError


@dataclass(frozen=True)
class TransitionSequence:
    """Cyclic list of flipped coordinates, labels in ``[1, d]``.

    ``alphabet`` records the original labels when the sequence was built by
    :meth:`normalized`; it is ``None`` otherwise.
    """

    entries: tuple[int, ...]
    d: int
    alphabet: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if not self.entries:
            raise ValueError("transition sequence must be nonempty")
        if self.d < 1:
            raise ValueError(f"dimension must be positive, got {self.d}")
        for i, x in enumerate(self.entries):
            if not 1 <= x <= self.d:
                raise ValueError(f"label {x} at position {i} outside [1, {self.d}]")

    @classmethod
    def of(cls, entries: Iterable[int], d: int | None = None) -> TransitionSequence:
        """Build from labels; ``d`` defaults to the largest label."""
        entries = tuple(int(x) for x in entries)
        if d is None:
            d = max(entries) if entries else 0
        return cls(entries, d)

    @classmethod
    def normalized(cls, labels: Iterable[int], d: int | None = None) -> TransitionSequence:
        """Rename arbitrary labels to 1, 2, ... in first-occurrence order."""
        labels = list(labels)
        order: dict[int, int] = {}
        for x in labels:
            order.setdefault(x, len(order) + 1)
        entries = tuple(order[x] for x in labels)
        return cls(entries, d if d is not None else len(order), tuple(order))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i % len(self.entries)]

    @property
    def n(self) -> int:
        return len(self.entries)

    def window(self, seg: Segment) -> tuple[int, ...]:
        n = self.n
        return tuple(self.entries[(seg.start + i) % n] for i in range(seg.length))

    def rotated(self, shift: int) -> TransitionSequence:
        s = shift % self.n
        return TransitionSequence(self.entries[s:] + self.entries[:s], self.d)

    def doubled(self) -> TransitionSequence:
        return TransitionSequence(self.entries * 2, self.d)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=np.int64)

    def __str__(self) -> str:
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class Segment:
    start: int
    length: int

    def check(self, n: int) -> None:
        if not 0 <= self.start < n:
            raise ValueError(f"segment start {self.start} outside [0, {n})")
        if not 0 < self.length <= n:
            raise ValueError(f"segment length {self.length} outside (0, {n}]")

    def complement(self, n: int) -> Segment:
        return Segment((self.start + self.length) % n, n - self.length)

    def indices(self, n: int) -> list[int]:
        return [(self.start + i) % n for i in range(self.length)]


@dataclass(frozen=True)
class ParityState:
    """Labels seen an odd number of times so far."""

    odd: frozenset[int] = frozenset()
    d: int | None = None

    @property
    def delta(self) -> int:
        return len(self.odd)


def extend_parity(state: ParityState, label: int) -> ParityState:
    if label < 1 or (state.d is not None and label > state.d):
        raise ValueError(f"label {label} outside [1, {state.d}]")
    return ParityState(state.odd ^ {label}, state.d)


def delta(T: TransitionSequence, s: Segment) -> int:
    """Number of labels occurring an odd number of times in the segment.

    Equals the Hamming distance between the segment's endpoint vertices.
    """
    s.check(T.n)
    counts = Counter(T.window(s))
    return sum(1 for c in counts.values() if c % 2)


def delta_by_parity(T: TransitionSequence, s: Segment) -> int:
    s.check(T.n)
    state = ParityState(d=T.d)
    for label in T.window(s):
        state = extend_parity(state, label)
    return state.delta


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    k: int
    status: str
    segment: Segment | None = None
    delta: int | None = None
    required: int | None = None

    def __bool__(self) -> bool:
        return self.ok


STATUS_NAMES = {
    kernels.OK: "pass",
    kernels.SPREAD_VIOLATION: "spread_violation",
    kernels.NOT_A_CIRCUIT: "not_a_circuit",
    kernels.NOT_SIMPLE_CYCLE: "not_simple_cycle",
}


def verify_spread(T: TransitionSequence, k: int) -> VerificationReport:
    """Check delta(w) >= min(|w|, |complement|, k) for every cyclic segment w.

    Raises NotACircuit when some label has odd multiplicity and NotSimpleCycle
    when a proper segment has delta 0 (or N == 2). Otherwise returns a report
    whose ``segment`` is the first violation ordered by (start, length).
    """
    if k < 1:
        raise ValueError(f"spread must be positive, got {k}")
    status, a, b = kernels.core_scan(T.as_array(), k)
    if status == kernels.NOT_A_CIRCUIT:
        odd = sorted(x for x, c in Counter(T.entries).items() if c % 2)
        raise NotACircuit(f"labels with odd multiplicity: {odd}")
    if status == kernels.NOT_SIMPLE_CYCLE:
        if a < 0:
            raise NotSimpleCycle(f"length-{T.n} walk is not a simple cycle")
        raise NotSimpleCycle(f"segment (start={a}, length={b}) returns to its first vertex")
    if status == kernels.OK:
        return VerificationReport(True, k, "pass")
    seg = Segment(a, b)
    return VerificationReport(
        False, k, "spread_violation", seg, delta(T, seg), min(b, T.n - b, k)
    )


def max_bit_run(T: TransitionSequence) -> tuple[int, Segment]:
    """Longest cyclic window without a repeated label, first by start index."""
    n = T.n
    e = T.entries
    best, best_start = 0, 0
    for s in range(n):
        seen = set()
        length = 0
        while length < n and e[(s + length) % n] not in seen:
            seen.add(e[(s + length) % n])
            length += 1
        if length > best:
            best, best_start = length, s
        if best == n:
            break
    return best, Segment(best_start, best)


def is_symmetric(T: TransitionSequence) -> bool:
    n = T.n
    if n % 2:
        raise NotACircuit(f"odd length {n} cannot be a circuit")
    half = n // 2
    return T.entries[:half] == T.entries[half:]


@dataclass(frozen=True)
class OccurrenceClasses:
    window: Segment
    once: frozenset[int]
    twice: frozenset[int]
    absent: frozenset[int]
    more: frozenset[int]

    @property
    def n1(self) -> int:
        return len(self.once)

    @property
    def n2(self) -> int:
        return len(self.twice)


def occurrence_classes(T: TransitionSequence, s: Segment) -> OccurrenceClasses:
    s.check(T.n)
    counts = Counter(T.window(s))
    labels = range(1, T.d + 1)
    return OccurrenceClasses(
        window=s,
        once=frozenset(x for x in labels if counts[x] == 1),
        twice=frozenset(x for x in labels if counts[x] == 2),
        absent=frozenset(x for x in labels if counts[x] == 0),
        more=frozenset(x for x in labels if counts[x] >= 3),
    )


def label_counts(T: TransitionSequence) -> dict[int, int]:
    counts = Counter(T.entries)
    return {x: counts[x] for x in range(1, T.d + 1)}


def check_alternation(T: TransitionSequence, params) -> bool:
    """Do the k+1 transitions after the first 2k+l alternate S1∩w1 / S2?

    ``params`` needs ``k`` and ``l`` attributes (a CodeParams works). The code
    must be a valid spread-k circuit opening with a (k+l)-bit run and have
    length at least 4k+l+1; otherwise PreconditionError names the failure.
    """
    k, l = params.k, params.l
    n = T.n
    run = k + l
    if n < 4 * k + l + 1:
        raise PreconditionError(f"length {n} < 4k+l+1 = {4 * k + l + 1}")
    if len(set(T.entries[:run])) != run:
        raise PreconditionError(f"first {run} transitions are not a bit run")
    try:
        report = verify_spread(T, k)
    except (NotACircuit, NotSimpleCycle) as exc:
        raise PreconditionError(f"not a spread-{k} circuit: {exc}") from exc
    if not report.ok:
        raise PreconditionError(
            f"not a spread-{k} circuit: segment {report.segment} has delta "
            f"{report.delta} < {report.required}"
        )

    head = 2 * k + l
    classes = occurrence_classes(T, Segment(0, head))
    omega1 = set(T.entries[:run])
    s1_in_w1 = classes.once & omega1
    for i in range(1, k + 2):
        alpha = T[head + i - 1]
        if i % 2 and alpha not in s1_in_w1:
            return False
        if not i % 2 and alpha not in classes.twice:
            return False
    return True
