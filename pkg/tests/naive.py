"""Generate-and-test reference for the search: every sequence, oracle-verified."""

import itertools

from circuitcodes.core import TransitionSequence, max_bit_run
from circuitcodes.errors import CircuitCodeError
from circuitcodes.isomorphism import canonical_key
from circuitcodes.oracle import verify_spread_bruteforce


def valid_codes(d, k, n, symmetric=True):
    """All spread-k circuit codes of length n over labels 1..d (as tuples)."""
    free = n // 2 if symmetric else n
    out = []
    for h in itertools.product(range(1, d + 1), repeat=free):
        entries = h + h if symmetric else h
        T = TransitionSequence(entries, d)
        try:
            if verify_spread_bruteforce(T, k).ok:
                out.append(entries)
        except CircuitCodeError:
            pass
    return out


def classes(codes, d, r):
    return {
        canonical_key(TransitionSequence(c, d))
        for c in codes
        if max_bit_run(TransitionSequence(c, d))[0] >= r
    }
