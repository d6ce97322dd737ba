"""Canonical labeling under cyclic shift and relabeling of coordinates.

Two transition sequences are isomorphic when one becomes the other after a
rotation and a permutation of [1, d]. Each rotation is renamed in
first-occurrence order; the lexicographically least result is the canonical
form. Reversal is not part of the relation and is only considered when
``with_reversal`` is requested.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import TransitionSequence
from .errors import WitnessError

Permutation = tuple[int, ...]  # perm[a - 1] is the image of label a


def _rename(seq: Sequence[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    mapping: dict[int, int] = {}
    out = []
    for x in seq:
        y = mapping.get(x)
        if y is None:
            y = mapping[x] = len(mapping) + 1
        out.append(y)
    return tuple(out), mapping


def _complete(mapping: dict[int, int], d: int) -> Permutation:
    free_src = [a for a in range(1, d + 1) if a not in mapping]
    free_dst = sorted(set(range(1, d + 1)) - set(mapping.values()))
    full = dict(mapping)
    full.update(zip(free_src, free_dst))
    return tuple(full[a] for a in range(1, d + 1))


def _rotations(entries: tuple[int, ...]):
    n = len(entries)
    for s in range(n):
        yield s, entries[s:] + entries[:s]


@dataclass(frozen=True)
class CanonicalForm:
    sequence: TransitionSequence
    shift: int
    relabel: Permutation
    reversed: bool = False


def canonicalize(T: TransitionSequence, with_reversal: bool = False) -> CanonicalForm:
    best = None
    variants = [(False, T.entries)]
    if with_reversal:
        variants.append((True, T.entries[::-1]))
    for rev, entries in variants:
        for s, rot in _rotations(entries):
            renamed, mapping = _rename(rot)
            if best is None or renamed < best[0]:
                best = (renamed, s, mapping, rev)
    renamed, s, mapping, rev = best
    return CanonicalForm(TransitionSequence(renamed, T.d), s, _complete(mapping, T.d), rev)


def canonical_key(T: TransitionSequence) -> tuple[int, ...]:
    return canonicalize(T).sequence.entries


def _as_permutation(permutation: Mapping[int, int] | Sequence[int], d: int) -> Permutation:
    if isinstance(permutation, Mapping):
        size = max([d, *permutation.keys(), *permutation.values()])
        missing = [a for a in range(1, size + 1) if a not in permutation]
        if missing:
            raise WitnessError(f"mapping undefined on {missing}")
        perm = tuple(int(permutation[a]) for a in range(1, size + 1))
    else:
        perm = tuple(int(x) for x in permutation)
        if len(perm) < d:
            raise WitnessError(f"permutation has {len(perm)} entries, need {d}")
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise WitnessError(f"{perm} is not a bijection on [1, {len(perm)}]")
    return perm


def apply_witness(
    T: TransitionSequence,
    shift: int,
    permutation: Mapping[int, int] | Sequence[int],
    reverse: bool = False,
) -> TransitionSequence:
    """Optionally reverse, rotate to start at index ``shift``, then relabel."""
    perm = _as_permutation(permutation, T.d)
    entries = T.entries[::-1] if reverse else T.entries
    s = shift % len(entries)
    rot = entries[s:] + entries[:s]
    return TransitionSequence(tuple(perm[x - 1] for x in rot), len(perm))


@dataclass(frozen=True)
class Witness:
    shift: int
    permutation: Permutation
    reversed: bool = False


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.isomorphic


def are_isomorphic(
    T1: TransitionSequence, T2: TransitionSequence, with_reversal: bool = False
) -> IsomorphismResult:
    """Decide isomorphism; on success return a witness mapping T1 onto T2.

    The witness is re-applied to T1 and compared with T2 before returning.
    """
    if T1.n != T2.n:
        return IsomorphismResult(False)
    c1 = canonicalize(T1, with_reversal)
    c2 = canonicalize(T2, with_reversal)
    if c1.sequence.entries != c2.sequence.entries:
        return IsomorphismResult(False)

    d = max(T1.d, T2.d)
    rev = c1.reversed != c2.reversed
    target, target_map = _rename(T2.entries)
    inverse_target = {v: a for a, v in target_map.items()}
    source = T1.entries[::-1] if rev else T1.entries
    for s, rot in _rotations(source):
        renamed, mapping = _rename(rot)
        if renamed == target:
            composed = {a: inverse_target[v] for a, v in mapping.items()}
            witness = Witness(s, _complete(composed, d), rev)
            break
    else:  # pragma: no cover - equal canonical forms guarantee a match
        raise AssertionError("canonical forms agree but no rotation matches")

    image = apply_witness(T1, witness.shift, witness.permutation, witness.reversed)
    if image.entries != T2.entries:  # pragma: no cover
        raise AssertionError("witness does not map T1 onto T2")
    return IsomorphismResult(True, witness)
