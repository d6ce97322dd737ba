import os
import subprocess
import sys

import pytest

from circuitcodes import kernels
from circuitcodes.construct import build_max_symmetric
from circuitcodes.errors import ConfigError, SearchAborted
from circuitcodes.isomorphism import canonical_key
from circuitcodes.search import (
    PruneFlags,
    Reject,
    SearchConfig,
    SearchState,
    enumerate_symmetric,
    prune_overlap,
    prune_window,
    symmetry_break_unused,
)

import naive


def state(prefix, k, d, r, n):
    return SearchState.from_prefix(prefix, k, d, r, n)


class TestPrunes:
    def test_window_accepts_family_path(self):
        assert prune_window(state(range(1, 8), 5, 9, 7, 24), 8) is None

    def test_window_bit_run(self):
        assert prune_window(state(range(1, 8), 5, 9, 7, 24), 3) is Reject.BITRUN

    def test_second_entry_after_run(self):
        # l=3, k=6: after (1..9, 2) only 4 survives both node checks
        k, d, r, n = 6, 11, 9, 30
        prefix = list(range(1, 10)) + [2]
        verdicts = {}
        for beta in range(2, k + 4):
            st = state(prefix, k, d, r, n)
            why = prune_window(st, beta)
            if why is None:
                st.push(beta)
                why = prune_overlap(st)
            verdicts[beta] = why
        assert verdicts[4] is None
        assert verdicts[3] is Reject.OVERLAP
        assert verdicts[2] is Reject.BITRUN
        assert all(verdicts[b] is Reject.BITRUN for b in range(5, k + 4))

    def test_window_delta_floor(self):
        st = state(list(range(1, 10)) + [2, 3], 6, 11, 9, 30)
        assert prune_window(st, 4) is Reject.DELTA_FLOOR

    def test_overlap(self):
        base = list(range(1, 10))
        assert prune_overlap(state(base + [2, 4], 6, 11, 9, 30)) is None
        assert prune_overlap(state(base + [2, 3], 6, 11, 9, 30)) is Reject.OVERLAP
        assert prune_overlap(state(base, 6, 11, 9, 30)) is None

    def test_overlap_needs_fixed_prefix(self):
        assert prune_overlap(state([2, 1, 2, 3], 6, 11, 9, 30)) is None

    def test_unused_order(self):
        st = state(range(1, 8), 5, 9, 7, 24)
        assert symmetry_break_unused(st, 9) is Reject.UNUSED_LABEL
        assert symmetry_break_unused(st, 8) is None
        assert symmetry_break_unused(state(range(1, 9), 5, 9, 7, 24), 3) is None

    def test_window_on_full_state(self):
        st = state(range(1, 4), 2, 3, 3, 6)
        with pytest.raises(ValueError):
            prune_window(st, 1)


class TestConfig:
    def test_family_defaults(self):
        cfg = SearchConfig.create(9, 5, 7)
        assert (cfg.n_min, cfg.n_max, cfg.l) == (24, 26, 2)

    @pytest.mark.parametrize(
        "args",
        [
            dict(d=9, k=5, r=8),
            dict(d=4, k=2, r=5, n_min=6, n_max=8),
            dict(d=4, k=2, r=3, n_min=5, n_max=8),
            dict(d=4, k=2, r=3, n_min=8, n_max=6),
            dict(d=4, k=2, r=3, n_min=2, n_max=6),
            dict(d=64, k=2, r=3, n_min=6, n_max=6),
            dict(d=4, k=0, r=3, n_min=6, n_max=6),
            dict(d=4, k=2, r=3, n_min=6, n_max=6, workers=0),
        ],
    )
    def test_invalid(self, args):
        with pytest.raises(ConfigError):
            SearchConfig.create(**args)


def _classes(cfg):
    rep = enumerate_symmetric(cfg)
    return {n: rep.class_set(n) for n in cfg.lengths()}, rep


class TestEnumeration:
    def test_l2(self):
        by_n, rep = _classes(SearchConfig.create(9, 5, 7))
        assert by_n[24] == {canonical_key(build_max_symmetric(5, 2))}
        assert rep.per_length[26].completions == 0
        assert rep.best_n == 24 and rep.exhaustive

    def test_l3(self):
        by_n, rep = _classes(SearchConfig.create(8, 4, 7))
        assert by_n[22] == {canonical_key(build_max_symmetric(4, 3))}
        assert rep.per_length[24].completions == 0

    @pytest.mark.parametrize("flag", ["prefix", "windows", "overlap", "unused"])
    @pytest.mark.parametrize("dkr", [(9, 5, 7), (8, 4, 7)])
    def test_prunes_are_sound(self, flag, dkr):
        full, _ = _classes(SearchConfig.create(*dkr))
        reduced, _ = _classes(SearchConfig.create(*dkr, prune=PruneFlags().without(flag)))
        assert full == reduced

    def test_workers_deterministic(self):
        one, r1 = _classes(SearchConfig.create(8, 4, 7))
        two, r2 = _classes(SearchConfig.create(8, 4, 7, workers=2))
        assert one == two
        assert r1.per_length[22].completions == r2.per_length[22].completions
        assert r1.nodes == r2.nodes

    def test_compiled_and_python_walkers_agree(self, monkeypatch):
        cfg = SearchConfig.create(9, 5, 7)
        fast = enumerate_symmetric(cfg)
        monkeypatch.setattr(kernels, "USE_NUMBA", False)
        slow = enumerate_symmetric(cfg)
        for n in cfg.lengths():
            a, b = fast.per_length[n], slow.per_length[n]
            assert (a.classes, a.completions, a.nodes, a.pruned) == (
                b.classes, b.completions, b.nodes, b.pruned
            )

    def test_budget(self):
        cfg = SearchConfig.create(9, 5, 7, max_nodes=10)
        with pytest.raises(SearchAborted) as info:
            enumerate_symmetric(cfg)
        assert not info.value.report.exhaustive

    @pytest.mark.parametrize("d,k,r,n", [(3, 1, 2, 6), (4, 2, 3, 8), (4, 2, 2, 8), (3, 2, 3, 6)])
    def test_asymmetric_matches_generate_and_test(self, d, k, r, n):
        cfg = SearchConfig(d, k, r, n, n, symmetric=False)
        rep = enumerate_symmetric(cfg)
        expected = naive.classes(naive.valid_codes(d, k, n, symmetric=False), d, r)
        assert rep.class_set(n) == expected


def test_numpy_backend_end_to_end():
    env = dict(os.environ, CIRCUITCODES_DISABLE_NUMBA="1")
    code = (
        "from circuitcodes import kernels\n"
        "from circuitcodes.search import SearchConfig, enumerate_symmetric\n"
        "assert not kernels.USE_NUMBA\n"
        "r = enumerate_symmetric(SearchConfig.create(8, 4, 7))\n"
        "print(len(r.per_length[22].classes), r.per_length[24].completions)\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert out.stdout.split() == ["1", "0"]
