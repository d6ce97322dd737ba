"""Hot inner loops, each in two flavors.

``*_loops`` functions are explicit loops compiled with numba; ``*_numpy``
functions are vectorized numpy equivalents. The unsuffixed public names are
bound to one flavor according to :mod:`circuitcodes._accel`.

Sequences are int64 arrays of labels in ``[1, d]``. Verifier results are
``(status, a, b)`` triples; ``a, b`` is a witness or ``-1, -1``.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

OK = 0
SPREAD_VIOLATION = 1
NOT_A_CIRCUIT = 2
NOT_SIMPLE_CYCLE = 3

ACCEPT = 0
BITRUN_VIOLATION = 1
DELTA_FLOOR_VIOLATION = 2

_CHUNK_CELLS = 1 << 24


def as_labels(seq) -> np.ndarray:
    return np.ascontiguousarray(seq, dtype=np.int64)


# ---------------------------------------------------------------------------
# segment verifier (incremental odd-label tracking per start index)
# ---------------------------------------------------------------------------


@njit
def _core_scan_loops(seq, k):
    n = seq.shape[0]
    d = 0
    for i in range(n):
        if seq[i] > d:
            d = seq[i]
    odd = np.zeros(d + 1, dtype=np.bool_)
    total = 0
    for i in range(n):
        lab = seq[i]
        if odd[lab]:
            odd[lab] = False
            total -= 1
        else:
            odd[lab] = True
            total += 1
    if total != 0:
        return NOT_A_CIRCUIT, -1, -1
    if n <= 2:
        return NOT_SIMPLE_CYCLE, -1, -1

    bad_s = -1
    bad_len = -1
    for s in range(n):
        odd[:] = False
        delta = 0
        for length in range(1, n):
            lab = seq[(s + length - 1) % n]
            if odd[lab]:
                odd[lab] = False
                delta -= 1
            else:
                odd[lab] = True
                delta += 1
            if delta == 0:
                return NOT_SIMPLE_CYCLE, s, length
            need = min(length, n - length, k)
            if delta < need and bad_s < 0:
                bad_s = s
                bad_len = length
    if bad_s >= 0:
        return SPREAD_VIOLATION, bad_s, bad_len
    return OK, -1, -1


@njit
def _core_scan_batch_loops(seqs, k):
    out = np.empty(seqs.shape[0], dtype=np.int8)
    for b in range(seqs.shape[0]):
        out[b] = _core_scan_loops(seqs[b], k)[0]
    return out


def _first_lex(first_len: np.ndarray, sentinel: int):
    """Per row: smallest start with a hit, then its first length. (-1, -1) if none."""
    hit = first_len < sentinel
    any_hit = hit.any(axis=1)
    s = np.argmax(hit, axis=1)
    length = first_len[np.arange(first_len.shape[0]), s]
    return any_hit, np.where(any_hit, s, -1), np.where(any_hit, length, -1)


def _core_scan_numpy_block(seqs: np.ndarray, k: int):
    b, n = seqs.shape
    d = int(seqs.max())
    labels = np.arange(d + 1)
    status = np.zeros(b, dtype=np.int8)
    wa = np.full(b, -1, dtype=np.int64)
    wb = np.full(b, -1, dtype=np.int64)

    counts = (seqs[:, :, None] == labels).sum(axis=1)
    not_circuit = (counts % 2).any(axis=1)
    status[not_circuit] = NOT_A_CIRCUIT
    if n <= 2:
        status[~not_circuit] = NOT_SIMPLE_CYCLE
        return status, wa, wb

    starts = np.arange(n)
    odd = np.zeros((b, n, d + 1), dtype=bool)
    delta = np.zeros((b, n), dtype=np.int64)
    first_zero = np.full((b, n), n, dtype=np.int64)
    first_bad = np.full((b, n), n, dtype=np.int64)
    for length in range(1, n):
        labs = seqs[:, (starts + length - 1) % n][:, :, None]
        was = np.take_along_axis(odd, labs, axis=2)
        np.put_along_axis(odd, labs, ~was, axis=2)
        delta += np.where(was[:, :, 0], -1, 1)
        need = min(length, n - length, k)
        first_zero = np.where((first_zero == n) & (delta == 0), length, first_zero)
        first_bad = np.where((first_bad == n) & (delta < need), length, first_bad)

    zero_any, zs, zl = _first_lex(first_zero, n)
    bad_any, bs, bl = _first_lex(first_bad, n)
    live = ~not_circuit
    simple_fail = live & zero_any
    spread_fail = live & ~zero_any & bad_any
    status[simple_fail] = NOT_SIMPLE_CYCLE
    status[spread_fail] = SPREAD_VIOLATION
    wa = np.where(simple_fail, zs, np.where(spread_fail, bs, -1))
    wb = np.where(simple_fail, zl, np.where(spread_fail, bl, -1))
    return status, wa, wb


def _chunked(fn, seqs: np.ndarray, k: int, cells_per_row: int):
    rows = max(1, _CHUNK_CELLS // max(1, cells_per_row))
    parts = [fn(seqs[i : i + rows], k) for i in range(0, seqs.shape[0], rows)]
    return tuple(np.concatenate(p) for p in zip(*parts))


def core_scan_numpy(seq, k: int):
    status, wa, wb = _core_scan_numpy_block(as_labels(seq)[None, :], k)
    return int(status[0]), int(wa[0]), int(wb[0])


def core_scan_batch_numpy(seqs, k: int) -> np.ndarray:
    seqs = np.atleast_2d(as_labels(seqs))
    n = seqs.shape[1]
    cells = n * (int(seqs.max()) + 1)
    return _chunked(_core_scan_numpy_block, seqs, k, cells)[0]


def core_scan_numba(seq, k: int):
    status, a, b = _core_scan_loops(as_labels(seq), k)
    return int(status), int(a), int(b)


def core_scan_batch_numba(seqs, k: int) -> np.ndarray:
    return _core_scan_batch_loops(np.atleast_2d(as_labels(seqs)), k)


# ---------------------------------------------------------------------------
# vertex-walk verifier (pairwise Hamming vs. cycle distance)
# ---------------------------------------------------------------------------


@njit
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit
def _oracle_scan_loops(seq, k):
    n = seq.shape[0]
    verts = np.zeros(n + 1, dtype=np.int64)
    one = np.int64(1)
    for i in range(n):
        verts[i + 1] = verts[i] ^ (one << (seq[i] - 1))
    if verts[n] != 0:
        return NOT_A_CIRCUIT, -1, -1
    if n <= 2:
        return NOT_SIMPLE_CYCLE, -1, -1
    for i in range(n):
        for j in range(i + 1, n):
            if verts[i] == verts[j]:
                return NOT_SIMPLE_CYCLE, i, j
    for i in range(n):
        for j in range(i + 1, n):
            gap = j - i
            cd = min(gap, n - gap)
            h = _popcount(verts[i] ^ verts[j])
            if cd <= k and h != cd:
                return SPREAD_VIOLATION, i, j
            if cd >= k and h < k:
                return SPREAD_VIOLATION, i, j
    return OK, -1, -1


@njit
def _oracle_scan_batch_loops(seqs, k):
    out = np.empty(seqs.shape[0], dtype=np.int8)
    for b in range(seqs.shape[0]):
        out[b] = _oracle_scan_loops(seqs[b], k)[0]
    return out


def walk_vertices(seq) -> np.ndarray:
    """Vertices x_1..x_{N+1} as integers; x_1 = 0."""
    seq = as_labels(seq)
    steps = np.left_shift(np.int64(1), seq - 1)
    return np.concatenate(([0], np.bitwise_xor.accumulate(steps))).astype(np.int64)


def _first_pair(mask: np.ndarray):
    b, n, _ = mask.shape
    flat = mask.reshape(b, n * n)
    any_hit = flat.any(axis=1)
    idx = np.argmax(flat, axis=1)
    return any_hit, np.where(any_hit, idx // n, -1), np.where(any_hit, idx % n, -1)


def _oracle_scan_numpy_block(seqs: np.ndarray, k: int):
    b, n = seqs.shape
    steps = np.left_shift(np.int64(1), seqs - 1)
    verts = np.bitwise_xor.accumulate(steps, axis=1)
    closes = verts[:, -1] == 0
    # x_1 = 0 followed by x_2..x_N
    v = np.concatenate((np.zeros((b, 1), dtype=np.int64), verts[:, :-1]), axis=1)
    status = np.where(closes, OK, NOT_A_CIRCUIT).astype(np.int8)
    wa = np.full(b, -1, dtype=np.int64)
    wb = np.full(b, -1, dtype=np.int64)
    if n <= 2:
        status[closes] = NOT_SIMPLE_CYCLE
        return status, wa, wb

    i = np.arange(n)
    upper = i[:, None] < i[None, :]
    gap = np.abs(i[:, None] - i[None, :])
    cd = np.minimum(gap, n - gap)
    same = (v[:, :, None] == v[:, None, :]) & upper
    ham = np.bitwise_count(v[:, :, None] ^ v[:, None, :])
    bad = upper & (((cd <= k) & (ham != cd)) | ((cd >= k) & (ham < k)))

    dup_any, di, dj = _first_pair(same)
    bad_any, bi, bj = _first_pair(bad)
    simple_fail = closes & dup_any
    spread_fail = closes & ~dup_any & bad_any
    status[simple_fail] = NOT_SIMPLE_CYCLE
    status[spread_fail] = SPREAD_VIOLATION
    wa = np.where(simple_fail, di, np.where(spread_fail, bi, -1))
    wb = np.where(simple_fail, dj, np.where(spread_fail, bj, -1))
    return status, wa, wb


def oracle_scan_numpy(seq, k: int):
    status, wa, wb = _oracle_scan_numpy_block(as_labels(seq)[None, :], k)
    return int(status[0]), int(wa[0]), int(wb[0])


def oracle_scan_batch_numpy(seqs, k: int) -> np.ndarray:
    seqs = np.atleast_2d(as_labels(seqs))
    n = seqs.shape[1]
    return _chunked(_oracle_scan_numpy_block, seqs, k, 4 * n * n)[0]


def oracle_scan_numba(seq, k: int):
    status, a, b = _oracle_scan_loops(as_labels(seq), k)
    return int(status), int(a), int(b)


def oracle_scan_batch_numba(seqs, k: int) -> np.ndarray:
    return _oracle_scan_batch_loops(np.atleast_2d(as_labels(seqs)), k)


# ---------------------------------------------------------------------------
# search node check
# ---------------------------------------------------------------------------


@njit
def _node_check_loops(seq, j, cand, k, n_total, period, d):
    # Positions < j are fixed; seq repeats with `period` inside a cycle of
    # length n_total. Only windows fully determined by seq[:j] + cand are tested.
    bound = min(k + 1, n_total // 2)
    for t in range(j):
        if period + t - j + 1 > bound:
            break
        if seq[t] == cand:
            return BITRUN_VIOLATION
    odd = np.zeros(d + 1, dtype=np.bool_)
    delta = 0
    for i in range(j, -1, -1):
        lab = cand if i == j else seq[i]
        if odd[lab]:
            odd[lab] = False
            delta -= 1
        else:
            odd[lab] = True
            delta += 1
        length = j - i + 1
        need = min(length, n_total - length, k)
        if delta < need:
            if length <= bound:
                return BITRUN_VIOLATION
            return DELTA_FLOOR_VIOLATION
    return ACCEPT


def node_check_numba(seq, j: int, cand: int, k: int, n_total: int, period: int, d: int) -> int:
    return int(_node_check_loops(seq, j, cand, k, n_total, period, d))


def node_check_numpy(seq, j: int, cand: int, k: int, n_total: int, period: int, d: int) -> int:
    bound = min(k + 1, n_total // 2)
    t = np.arange(j)
    seam = period + t - j + 1 <= bound
    if np.any(seq[:j][seam] == cand):
        return BITRUN_VIOLATION
    window = np.append(seq[:j], cand)[::-1]
    onehot = window[:, None] == np.arange(d + 1)
    delta = (np.cumsum(onehot, axis=0) % 2).sum(axis=1)
    lengths = np.arange(1, j + 2)
    need = np.minimum(np.minimum(lengths, n_total - lengths), k)
    bad = np.flatnonzero(delta < need)
    if bad.size == 0:
        return ACCEPT
    return BITRUN_VIOLATION if lengths[bad[0]] <= bound else DELTA_FLOOR_VIOLATION


if USE_NUMBA:
    core_scan = core_scan_numba
    core_scan_batch = core_scan_batch_numba
    oracle_scan = oracle_scan_numba
    oracle_scan_batch = oracle_scan_batch_numba
    node_check = node_check_numba
else:
    core_scan = core_scan_numpy
    core_scan_batch = core_scan_batch_numpy
    oracle_scan = oracle_scan_numpy
    oracle_scan_batch = oracle_scan_batch_numpy
    node_check = node_check_numpy


# ---------------------------------------------------------------------------
# overlap bounds against the fixed prefix run 1..r
# ---------------------------------------------------------------------------


@njit
def _overlap_ok_loops(seq, depth, k, r, n_total, period):
    if k > n_total // 2:
        return True
    hi = min(r + k, depth)
    if hi > r:
        for q in range(1, r + 1):
            run = r - q + 1
            if run + k > n_total - k:
                continue
            hits = 0
            for t in range(r, hi):
                if q <= seq[t] <= r:
                    hits += 1
            if hits > run // 2:
                return False
    tail_start = max(period - k, r)
    if depth > tail_start:
        for s in range(1, r + 1):
            if k + s > n_total - k:
                break
            hits = 0
            for t in range(tail_start, depth):
                if seq[t] <= s:
                    hits += 1
            if hits > s // 2:
                return False
    return True


def overlap_ok_numba(seq, depth: int, k: int, r: int, n_total: int, period: int) -> bool:
    return bool(_overlap_ok_loops(seq, depth, k, r, n_total, period))


def overlap_ok_numpy(seq, depth: int, k: int, r: int, n_total: int, period: int) -> bool:
    if k > n_total // 2:
        return True
    after = seq[r : min(r + k, depth)]
    if after.size:
        q = np.arange(1, r + 1)
        run = r - q + 1
        live = run + k <= n_total - k
        hits = ((after[None, :] >= q[:, None]) & (after[None, :] <= r)).sum(axis=1)
        if np.any(live & (hits > run // 2)):
            return False
    tail_start = max(period - k, r)
    tail = seq[tail_start:depth] if depth > tail_start else seq[:0]
    if tail.size:
        s = np.arange(1, r + 1)
        live = k + s <= n_total - k
        hits = (tail[None, :] <= s[:, None]).sum(axis=1)
        if np.any(live & (hits > s // 2)):
            return False
    return True


# ---------------------------------------------------------------------------
# whole depth-first search (compiled path only)
# ---------------------------------------------------------------------------

# prune counter slots
CNT_BITRUN = 0
CNT_DELTA = 1
CNT_OVERLAP = 2
CNT_UNUSED = 3


@njit
def _dfs_loops(
    seq, start_depth, first, k, d, r, n_total,
    use_windows, use_overlap, use_unused, prefix_fixed, max_nodes,
):
    period = seq.shape[0]
    occ = np.zeros(d + 1, dtype=np.int64)
    for i in range(start_depth):
        occ[seq[i]] += 1
    counts = np.zeros(4, dtype=np.int64)
    nodes = 0
    aborted = False
    leaves = [seq[:0].copy()]
    leaves.pop()
    full = np.empty(n_total, dtype=np.int64)
    nxt = np.ones(period + 1, dtype=np.int64)

    depth = start_depth
    if first > 0:
        seq[depth] = first
        occ[first] += 1
        depth += 1
        nodes += 1
    base = depth
    nxt[depth] = 1
    while True:
        if depth == period:
            for i in range(n_total):
                full[i] = seq[i % period]
            if _core_scan_loops(full, k)[0] == OK:
                leaves.append(seq.copy())
            if depth == base:
                break
            depth -= 1
            occ[seq[depth]] -= 1
            continue
        c = nxt[depth]
        if c > d:
            if depth == base:
                break
            depth -= 1
            occ[seq[depth]] -= 1
            continue
        nxt[depth] = c + 1
        if use_unused and occ[c] == 0:
            smallest = 1
            while occ[smallest] != 0:
                smallest += 1
            if c != smallest:
                counts[CNT_UNUSED] += 1
                continue
        if use_windows:
            code = _node_check_loops(seq, depth, c, k, n_total, period, d)
            if code == BITRUN_VIOLATION:
                counts[CNT_BITRUN] += 1
                continue
            if code == DELTA_FLOOR_VIOLATION:
                counts[CNT_DELTA] += 1
                continue
        seq[depth] = c
        if use_overlap and prefix_fixed:
            if not _overlap_ok_loops(seq, depth + 1, k, r, n_total, period):
                counts[CNT_OVERLAP] += 1
                continue
        nodes += 1
        if max_nodes >= 0 and nodes > max_nodes:
            aborted = True
            break
        occ[c] += 1
        depth += 1
        nxt[depth] = 1
    return leaves, nodes, counts, aborted


def dfs_numba(seq, start_depth, first, k, d, r, n_total, windows, overlap, unused,
              prefix_fixed, max_nodes):
    """Returns (leaf periods passing the full verifier, nodes, prune counts, aborted)."""
    leaves, nodes, counts, aborted = _dfs_loops(
        as_labels(seq).copy(), start_depth, first, k, d, r, n_total,
        windows, overlap, unused, prefix_fixed, -1 if max_nodes is None else max_nodes,
    )
    return list(leaves), int(nodes), counts, bool(aborted)


if USE_NUMBA:
    overlap_ok = overlap_ok_numba
else:
    overlap_ok = overlap_ok_numpy
