"""Systematic encoder: row parity, common bits, diagonal parity, and
incremental single-cell update.

Row parity (column k) of row i is the XOR of the k information cells of
that row.  Diagonal parity (column k+1) of row i is the XOR of the cells
b[i-j, j] for j = 0..k-1 (subscripts mod tau*p, virtual rows skipped),
plus the common bit S[i mod t] for the first n_c rows.  The common bit
S[mu] is the XOR of the cells b[tau*(p-1)+mu-j, j] for j = 1..k-1; the
term is real exactly when mu < j.

Common bits are computed once per encode and reused across the n_c rows,
and virtual diagonal terms are skipped rather than XOR-ed as zero lanes,
so an injected XOR counter sees exactly
2*(k-1)*tau*(p-1) - t + n_c lane XORs per encode.
"""

from __future__ import annotations

from .codearray import CodeArray, Lane, xor_lanes, zero_lane
from .errors import ParityColumnNotUpdatable
from .params import CodeParams

CommonBits = list  # list[Lane] of length t


def common_bit_participants(params: CodeParams, mu: int) -> list[tuple[int, int]]:
    """Real cells feeding common bit mu: (row, column) pairs, column > mu."""
    rows = params.rows
    return [
        ((rows + mu - j) % params.ring, j)
        for j in range(mu + 1, params.k)
    ]


def compute_common_bits(array: CodeArray, counter=None) -> CommonBits:
    """XOR up the t common bits from the information columns."""
    p = array.params
    out = []
    for mu in range(p.t):
        acc: Lane | None = None
        for i, j in common_bit_participants(p, mu):
            cell = array.get(i, j)
            acc = cell if acc is None else xor_lanes(acc, cell, counter)
        out.append(acc if acc is not None else zero_lane(array.lane_width))
    return out


def _diag_terms(params: CodeParams, i: int) -> list[tuple[int, int]]:
    """Real diagonal cells of parity row i: (row, column) with row < rows."""
    terms = []
    for j in range(params.k):
        r = (i - j) % params.ring
        if r < params.rows:
            terms.append((r, j))
    return terms


def encode(array: CodeArray, counter=None) -> CodeArray:
    """Fill both parity columns from the information columns, in place."""
    p = array.params
    s = compute_common_bits(array, counter)
    for i in range(p.rows):
        acc = array.get(i, 0)
        for j in range(1, p.k):
            acc = xor_lanes(acc, array.get(i, j), counter)
        array.set(i, p.k, acc)
    for i in range(p.rows):
        terms = _diag_terms(p, i)
        acc = array.get(*terms[0])  # j=0 term is always real
        for rc in terms[1:]:
            acc = xor_lanes(acc, array.get(*rc), counter)
        if i < p.n_c:
            acc = xor_lanes(acc, s[i % p.t], counter)
        array.set(i, p.k + 1, acc)
    return array


def parity_dependents(params: CodeParams, i: int, j: int) -> list[tuple[int, int]]:
    """Parity cells whose defining equation contains information cell (i, j).

    Data independent; update_cell patches exactly these positions.  The
    diagonal touch and the common-bit touches can never coincide: (i, j)
    participates in a common bit only when its diagonal row i+j is virtual.
    """
    p = params
    positions = [(i, p.k)]
    diag_row = (i + j) % p.ring
    if diag_row < p.rows:
        positions.append((diag_row, p.k + 1))
    else:
        mu = diag_row - p.rows
        if mu < p.t and mu < j:
            # (i, j) is the column-j participant of common bit mu.
            positions.extend(
                (r, p.k + 1) for r in range(mu, p.n_c, p.t)
            )
    return positions


def update_cell(
    array: CodeArray, i: int, j: int, new_value: Lane, counter=None
) -> list[tuple[int, int]]:
    """Replace information cell (i, j), XOR-patching affected parity cells.

    Returns the distinct parity positions patched.  Patching a cell with
    its current value returns the same positions and leaves the array
    unchanged (the XOR deltas are zero).
    """
    p = array.params
    if not (0 <= i < p.rows):
        raise IndexError(f"row {i} out of range [0, {p.rows})")
    if not (0 <= j < p.k):
        raise ParityColumnNotUpdatable(
            f"column {j} is not an information column (k={p.k})"
        )
    delta = xor_lanes(array.get(i, j), new_value, counter)
    array.set(i, j, new_value)
    positions = parity_dependents(p, i, j)
    for r, c in positions:
        array.set(r, c, xor_lanes(array.get(r, c), delta, counter))
    return positions
