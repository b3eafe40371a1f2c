from fractions import Fraction

import pytest

from eoflex.baseline import (
    evenodd_encode,
    evenodd_update_complexity,
    evenodd_update_formula,
    tau1_equivalence_check,
    validate_evenodd,
)
from eoflex.errors import PNotPrime, PTooSmall


def lanes(grid):
    return [[bytes([v]) for v in row] for row in grid]


class TestClassicEncoder:
    def test_zero(self):
        out = evenodd_encode(lanes([[0] * 3] * 4), 5, 3)
        assert all(cell == b"\x00" for row in out for cell in row)

    def test_common_bit_feeds_every_row(self):
        # b[3,1] = 1 is the only set bit; it is a common-bit participant
        # (diagonal row 3+1 = 4 is virtual), so all four rows of the
        # diagonal-parity column light up.
        grid = [[0] * 3 for _ in range(4)]
        grid[3][1] = 1
        out = evenodd_encode(lanes(grid), 5, 3)
        assert [row[3] for row in out] == [b"\x00"] * 3 + [b"\x01"]
        assert [row[4] for row in out] == [b"\x01"] * 4

    def test_plain_diagonal_bit(self):
        grid = [[0] * 3 for _ in range(4)]
        grid[0][0] = 1
        out = evenodd_encode(lanes(grid), 5, 3)
        assert [row[4] for row in out] == [b"\x01", b"\x00", b"\x00", b"\x00"]

    def test_bad_parameters(self):
        with pytest.raises(PNotPrime):
            validate_evenodd(9, 3)
        with pytest.raises(PTooSmall):
            validate_evenodd(3, 5)


class TestClassicUpdateComplexity:
    def test_example_value(self):
        assert evenodd_update_complexity(5, 3) == Fraction(5, 2)

    @pytest.mark.parametrize("p,k", [(5, 3), (7, 4), (7, 5), (11, 7), (13, 4)])
    def test_matches_formula_exactly(self, p, k):
        assert evenodd_update_complexity(p, k) == evenodd_update_formula(p, k)


class TestTau1Reduction:
    @pytest.mark.parametrize("p,k,threshold", [(5, 3, 2), (7, 5, 4), (9, 3, 2)])
    def test_structure(self, p, k, threshold):
        from eoflex.params import validate_params

        assert tau1_equivalence_check(p, k)
        assert validate_params(1, p, k).n_c == threshold
