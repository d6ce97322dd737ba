"""Closed-form constructions: the maximum-length symmetric family, trivial codes, bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .core import TransitionSequence, is_symmetric, max_bit_run, verify_spread
from .errors import CircuitCodeError, FamilyConditionError, ParityError


@dataclass(frozen=True)
class CodeParams:
    d: int
    k: int
    l: int
    r: int
    N: int


def validate_params(k: int, l: int) -> CodeParams:
    """Check (k, l) against the family conditions and derive d, r and N.

    k and l must have opposite parity, with k >= 2l+1 for odd k and
    k >= 2l-2 for even k. Then d = (3k+l+1)/2, r = k+l, N = 4k+2l.
    """
    if k < 2 or l < 2:
        raise FamilyConditionError(f"need k >= 2 and l >= 2, got k={k}, l={l}")
    if (k - l) % 2 == 0:
        raise ParityError(f"k={k} and l={l} have the same parity")
    if k % 2 and k < 2 * l + 1:
        raise FamilyConditionError(f"odd k={k} needs k >= 2l+1 = {2 * l + 1}")
    if k % 2 == 0 and k < 2 * l - 2:
        raise FamilyConditionError(f"even k={k} needs k >= 2l-2 = {2 * l - 2}")
    return CodeParams(d=(3 * k + l + 1) // 2, k=k, l=l, r=k + l, N=4 * k + 2 * l)


def is_family(d: int, k: int, r: int) -> bool:
    """True when (d, k, r) is a long-bit-run family instance with r = k+l."""
    try:
        p = validate_params(k, r - k)
    except CircuitCodeError:
        return False
    return p.d == d


@dataclass(frozen=True)
class ConstructionSpec:
    k: int
    l: int
    m: int
    omega1: tuple[int, ...]
    omega2A: tuple[int, ...]
    omega2B: tuple[int, ...]

    @classmethod
    def of(cls, k: int, l: int) -> ConstructionSpec:
        validate_params(k, l)
        twice_m = k - l + 1
        if twice_m <= 0 or twice_m % 2:
            raise FamilyConditionError(f"m = (k-l+1)/2 is not a positive integer for k={k}, l={l}")
        m = twice_m // 2
        omega2B = []
        for i in range(1, m + 1):
            omega2B += [k + l + i, 2 * (l - 1 + i)]
        return cls(
            k=k,
            l=l,
            m=m,
            omega1=tuple(range(1, k + l + 1)),
            omega2A=tuple(range(2, 2 * l - 1, 2)),
            omega2B=tuple(omega2B),
        )

    @property
    def half(self) -> tuple[int, ...]:
        return self.omega1 + self.omega2A + self.omega2B


def build_max_symmetric(k: int, l: int, check: bool = True) -> TransitionSequence:
    """The length-(4k+2l) symmetric code (w1, w2A, w2B, w1, w2A, w2B).

    With ``check`` (the default) the result is verified at spread k, tested
    for symmetry and for a bit run of length k+l before it is returned.
    """
    params = validate_params(k, l)
    spec = ConstructionSpec.of(k, l)
    T = TransitionSequence(spec.half * 2, params.d)
    if check:
        report = verify_spread(T, k)
        if not report.ok:
            raise CircuitCodeError(f"construction failed spread check at {report.segment}")
        if not is_symmetric(T):
            raise CircuitCodeError("construction is not symmetric")
        phi, _ = max_bit_run(T)
        if phi < k + l:
            raise CircuitCodeError(f"construction has bit run {phi} < {k + l}")
    return T


def build_trivial(k: int) -> TransitionSequence:
    """(1..k, 1..k): a spread-k circuit of length 2k in dimension k."""
    if k < 2:
        raise ValueError(f"trivial code needs k >= 2, got {k}")
    return TransitionSequence(tuple(range(1, k + 1)) * 2, k)


def dimension_lower_bound(k: int, l: int) -> int:
    """Least dimension admitting a long code with maximum bit run k+l."""
    if k < 1 or l < 2:
        raise ValueError(f"need k >= 1 and l >= 2, got k={k}, l={l}")
    return k + 1 + (k + l) // 2
