"""Brute-force vertex-walk verifier.

Materializes x_1 = 0, x_{i+1} = x_i XOR e_{tau_i} and compares Hamming
distance with cycle distance for every vertex pair. Slow by design; it is the
ground truth the segment verifier in :mod:`circuitcodes.core` is checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .core import TransitionSequence
from .errors import NotACircuit, NotSimpleCycle

MAX_DIMENSION = 63


@dataclass(frozen=True)
class VertexWalk:
    vertices: tuple[int, ...]
    n: int
    closes: bool
    distinct: bool

    def bits(self, i: int, d: int) -> str:
        """Vertex i as a d-character bit string, coordinate 1 first."""
        v = self.vertices[i]
        return "".join("1" if v >> c & 1 else "0" for c in range(d))


@dataclass(frozen=True)
class PairViolation:
    i: int
    j: int
    cycle_distance: int
    hamming: int


@dataclass(frozen=True)
class BruteForceReport:
    ok: bool
    k: int
    status: str
    pair: PairViolation | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_dimension(T: TransitionSequence) -> None:
    if T.d > MAX_DIMENSION:
        raise ValueError(f"vertex words hold at most {MAX_DIMENSION} coordinates, got d={T.d}")


def walk(T: TransitionSequence) -> VertexWalk:
    """Walk the cube from the origin; raise if it fails to be a simple cycle."""
    _check_dimension(T)
    verts = [int(v) for v in kernels.walk_vertices(T.as_array())]
    n = T.n
    closes = verts[n] == 0
    distinct = n > 2 and len(set(verts[:n])) == n
    w = VertexWalk(tuple(verts[:n]), n, closes, distinct)
    if not closes:
        raise NotACircuit(f"walk ends at {verts[n]:#x}, not at the origin")
    if not distinct:
        raise NotSimpleCycle("walk revisits a vertex or an edge")
    return w


def hamming(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def cycle_distance(i: int, j: int, n: int) -> int:
    g = abs(i - j) % n
    return min(g, n - g)


def verify_spread_bruteforce(T: TransitionSequence, k: int) -> BruteForceReport:
    """Pairwise check: cd <= k implies equal distances; cd >= k implies Hamming >= k."""
    if k < 1:
        raise ValueError(f"spread must be positive, got {k}")
    _check_dimension(T)
    status, i, j = kernels.oracle_scan(T.as_array(), k)
    if status == kernels.NOT_A_CIRCUIT:
        raise NotACircuit("walk does not return to the origin")
    if status == kernels.NOT_SIMPLE_CYCLE:
        if i < 0:
            raise NotSimpleCycle(f"length-{T.n} walk retraces an edge")
        raise NotSimpleCycle(f"vertices {i} and {j} coincide")
    if status == kernels.OK:
        return BruteForceReport(True, k, "pass")
    verts = kernels.walk_vertices(T.as_array())
    pair = PairViolation(i, j, cycle_distance(i, j, T.n), hamming(int(verts[i]), int(verts[j])))
    return BruteForceReport(False, k, "spread_violation", pair)
