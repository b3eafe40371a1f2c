import itertools
import random

import pytest

from conftest import ACCEPTANCE_SETS, deficient_pairs
from eoflex.codearray import CodeArray
from eoflex.codec import encode
from eoflex.errors import Underdetermined
from eoflex.oracle import (
    encode_bits,
    erasure_solver,
    gaussian_decode,
    generator_matrix,
    mds_exhaustive_check,
    rank_check,
)
from eoflex.params import CodeParams, validate_params

PRM = validate_params(2, 5, 3)


def array_bits(arr):
    prm = arr.params
    return [
        arr.get(i, c)[0] & 1
        for c in range(prm.k + 2)
        for i in range(prm.rows)
    ]


class TestGenerator:
    def test_systematic_identity(self):
        for triple in [(2, 5, 3), (1, 7, 4), (1, 11, 7)]:
            prm = validate_params(*triple)
            g = generator_matrix(prm)
            n = prm.k * prm.rows
            for r in range(n):
                assert g.bits[r] == 1 << r

    def test_zero_maps_to_zero(self):
        g = generator_matrix(PRM)
        assert g.mul_vec(0) == [0] * g.rows

    def test_unit_b71_parity_support(self):
        # Info bit (row 7, column 1) feeds parity bits (7,3), (0,4), (2,4).
        g = generator_matrix(PRM)
        idx = 1 * PRM.rows + 7
        support = {
            (r % PRM.rows, r // PRM.rows)
            for r in range(g.rows)
            if g.get(r, idx)
        }
        assert support == {(7, 1), (7, 3), (0, 4), (2, 4)}

    @pytest.mark.parametrize("triple", [(2, 5, 3), (2, 7, 4), (1, 11, 7)])
    def test_matches_lane_encoder_on_units(self, triple):
        prm = validate_params(*triple)
        n = prm.k * prm.rows
        for j in range(prm.k):
            for i in range(prm.rows):
                arr = CodeArray.zeros(prm, 1)
                arr.set(i, j, b"\x01")
                encode(arr)
                info = [0] * n
                info[j * prm.rows + i] = 1
                assert encode_bits(prm, info) == array_bits(arr), (triple, i, j)

    def test_full_rank_for_acceptance_sets(self):
        for triple in ACCEPTANCE_SETS:
            prm = validate_params(*triple)
            solver = erasure_solver(prm, frozenset())
            assert solver.rank == prm.k * prm.rows


class TestGaussianDecode:
    def test_zero_word(self):
        n = PRM.k * PRM.rows
        assert gaussian_decode(PRM, [0] * (PRM.k + 2) * PRM.rows, (0, 2)) == [0] * n

    @pytest.mark.parametrize("pair", list(itertools.combinations(range(5), 2)))
    def test_roundtrip_all_pairs(self, pair, rng):
        n = PRM.k * PRM.rows
        info = [rng.randrange(2) for _ in range(n)]
        word = encode_bits(PRM, info)
        assert gaussian_decode(PRM, word, pair) == info

    def test_underdetermined_raises(self, rng):
        prm = validate_params(2, 7, 4)
        word = encode_bits(prm, [0] * (prm.k * prm.rows))
        with pytest.raises(Underdetermined):
            gaussian_decode(prm, word, (0, 3))


class TestMdsSweep:
    def test_example_instance_clean(self):
        report = mds_exhaustive_check(PRM, trials=100, seed=1)
        assert len(report.pairs) == 10
        assert report.failures == []

    def test_p_nine_clean(self):
        report = mds_exhaustive_check(validate_params(3, 9, 3), trials=50, seed=2)
        assert report.failures == []

    def test_tau_one_reduction_clean(self):
        report = mds_exhaustive_check(validate_params(1, 5, 3), trials=100, seed=3)
        assert report.failures == []

    def test_known_rank_gap(self):
        report = mds_exhaustive_check(validate_params(2, 7, 4), trials=5, seed=4)
        assert [r.columns for r in report.failures] == [(0, 3)]

    def test_forced_invalid_parameters_recorded_not_asserted(self):
        # Bypassing validation (divisor 3 of 9 is <= k-1) may or may not
        # break pairs; the sweep records outcomes as data.
        forced = CodeParams(
            tau=1, p=9, k=4, t=1, n_c=4,
            regime=validate_params(1, 11, 4).regime, rows=8, ring=9,
        )
        report = mds_exhaustive_check(forced, trials=3, seed=5)
        assert len(report.pairs) == 15

    def test_csv_shape(self):
        report = mds_exhaustive_check(PRM, trials=2, seed=6)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "tau,p,k,columns,status,detail"
        assert len(lines) == 11
        assert all(",pass," in line or ",fail," in line for line in lines[1:])


class TestRankCheck:
    @pytest.mark.parametrize("triple", ACCEPTANCE_SETS)
    def test_matches_known_gaps(self, triple):
        assert rank_check(validate_params(*triple)) == deficient_pairs(triple)
