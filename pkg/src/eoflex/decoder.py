"""Erasure recovery for any one or two erased columns.

Single-column and column+parity erasures reduce to straightforward parity
inversion.  Two erased information columns f < g are recovered by a chain
chaser over the subscript ring Z_{tau*p}: after subtracting the surviving
columns from both parity columns, each row-parity row links the two erased
cells of one row, each diagonal-parity row links cells g-f apart (plus a
reduced common bit on the first n_c rows), and walks of stride g-f thread
those links together.  Three facts drive the walk:

  * virtual positions (>= tau*(p-1)) are known zero and anchor chains;
  * the XOR of all 2*tau*(p-1) parity lanes equals the XOR of the common
    bits, giving one extra equation;
  * each reduced common bit is itself the XOR of at most two erased cells,
    so it becomes known the moment those cells are.

When plain propagation stalls, a telescoping seed (the XOR of a run of
diagonal syndromes, the row syndromes between them, and optionally the
common-bit sum) isolates a single unknown.  Solved cells are tracked by an
explicit known mask; if the engine exhausts every rule with cells still
unknown it raises ChainStall rather than returning garbage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .codearray import CodeArray, ErasurePattern, Lane, xor_lanes, zero_lane
from .codec import common_bit_participants, encode
from .errors import (
    ChainStall,
    DiagParityMissing,
    ParityMissing,
    RowParityMissing,
)
from .params import CodeParams


@dataclass
class SyndromePair:
    """Reduced two-column syndromes: row_syn[i] is the XOR of the two
    erased cells of row i; diag_syn[i] additionally carries the reduced
    common bit on rows below the common-row threshold."""

    f: int
    g: int
    row_syn: list[Lane]
    diag_syn: list[Lane]
    sum_s: Lane  # XOR of the reduced common bits


def sum_common_bits(array: CodeArray, counter=None, pattern: ErasurePattern | None = None) -> Lane:
    """XOR of all 2*tau*(p-1) parity lanes, which telescopes to the XOR of
    the t common bits (each appears an odd number of times overall)."""
    p = array.params
    if pattern is not None and (p.k in pattern.erased or p.k + 1 in pattern.erased):
        raise ParityMissing("both parity columns are required to sum the common bits")
    acc = array.get(0, p.k)
    for i in range(1, p.rows):
        acc = xor_lanes(acc, array.get(i, p.k), counter)
    for i in range(p.rows):
        acc = xor_lanes(acc, array.get(i, p.k + 1), counter)
    return acc


def _reduced_common_surviving(
    array: CodeArray, mu: int, skip: tuple[int, int], counter=None
) -> Lane | None:
    """XOR of the surviving participants of common bit mu (columns outside
    `skip`), or None when no participant survives."""
    acc = None
    for r, j in common_bit_participants(array.params, mu):
        if j in skip:
            continue
        cell = array.get(r, j)
        acc = cell if acc is None else xor_lanes(acc, cell, counter)
    return acc


def build_syndromes(
    array: CodeArray, f: int, g: int, counter=None, sum_counter=None
) -> SyndromePair:
    """Subtract all surviving contributions from both parity columns.

    `counter` sees the reduction XORs; `sum_counter` sees the parity-sum
    XORs (the two are reported separately by the metrics module).
    """
    p = array.params
    skip = (f, g)
    row_syn: list[Lane] = []
    for i in range(p.rows):
        acc = array.get(i, p.k)
        for j in range(p.k):
            if j not in skip:
                acc = xor_lanes(acc, array.get(i, j), counter)
        row_syn.append(acc)

    reduced_s = [
        _reduced_common_surviving(array, mu, skip, counter) for mu in range(p.t)
    ]
    diag_syn: list[Lane] = []
    for i in range(p.rows):
        acc = array.get(i, p.k + 1)
        for j in range(p.k):
            if j in skip:
                continue
            r = (i - j) % p.ring
            if r < p.rows:
                acc = xor_lanes(acc, array.get(r, j), counter)
        if i < p.n_c and reduced_s[i % p.t] is not None:
            acc = xor_lanes(acc, reduced_s[i % p.t], counter)
        diag_syn.append(acc)

    sum_s = sum_common_bits(array, sum_counter)
    for lane in reduced_s:
        if lane is not None:
            sum_s = xor_lanes(sum_s, lane, counter)
    return SyndromePair(f, g, row_syn, diag_syn, sum_s)


class _PairEngine:
    """Chain chaser for two erased information columns.

    Variables: F[pos], G[pos] over ring positions (virtual ones known
    zero) and the t reduced common bits.  Equations: the row and diagonal
    syndromes, the common-bit definitions, and the common-bit sum.  The
    rule schedule is data independent, so XOR counts depend only on the
    parameters and the erased pair.
    """

    def __init__(self, array: CodeArray, syn: SyndromePair, chase_counter=None):
        p = array.params
        self.p = p
        self.syn = syn
        self.f = syn.f
        self.g = syn.g
        self.d = syn.g - syn.f
        self.width = array.lane_width
        self.counter = chase_counter
        zero = zero_lane(array.lane_width)
        # val[side][pos]: side 0 = column f, side 1 = column g.
        self.val = [[None] * p.ring for _ in range(2)]
        self.known = [[False] * p.ring for _ in range(2)]
        for side in range(2):
            for pos in range(p.rows, p.ring):
                self.val[side][pos] = zero
                self.known[side][pos] = True
        # Reduced common bits: definition S'[mu] = F[rows+mu-f] ^ G[rows+mu-g]
        # restricted to real positions.  No real part => structurally zero.
        self.s_val: list[Lane | None] = [None] * p.t
        self.s_known = [False] * p.t
        self.s_parts: list[list[tuple[int, int]]] = []
        self.s_struct_zero = [False] * p.t
        for mu in range(p.t):
            parts = []
            for side, col in ((0, self.f), (1, self.g)):
                pos = (p.rows + mu - col) % p.ring
                if pos < p.rows:
                    parts.append((side, pos))
            self.s_parts.append(parts)
            if not parts:
                self.s_val[mu] = zero
                self.s_known[mu] = True
                self.s_struct_zero[mu] = True
        self._did_stride_seeds = False

    # -- helpers -----------------------------------------------------------

    def _xor(self, acc: Lane | None, lane: Lane) -> Lane:
        return lane if acc is None else xor_lanes(acc, lane, self.counter)

    def _set_cell(self, side: int, pos: int, lane: Lane) -> None:
        self.val[side][pos] = lane
        self.known[side][pos] = True

    def _diag_positions(self, i: int) -> tuple[int, int]:
        return (i - self.f) % self.p.ring, (i - self.g) % self.p.ring

    def _s_index(self, i: int) -> int | None:
        return i % self.p.t if i < self.p.n_c else None

    # -- rules -------------------------------------------------------------

    def _rule_links(self) -> bool:
        """Complete common-bit definitions (zero-cost or single-XOR)."""
        progress = False
        for mu in range(self.p.t):
            parts = self.s_parts[mu]
            known_parts = [(s, q) for s, q in parts if self.known[s][q]]
            if not self.s_known[mu]:
                if len(known_parts) == len(parts):
                    acc = None
                    for s, q in parts:
                        acc = self._xor(acc, self.val[s][q])
                    self.s_val[mu] = acc
                    self.s_known[mu] = True
                    progress = True
            elif len(known_parts) == len(parts) - 1:
                (ms, mq) = next((s, q) for s, q in parts if not self.known[s][q])
                acc = self.s_val[mu]
                for s, q in known_parts:
                    acc = xor_lanes(acc, self.val[s][q], self.counter)
                self._set_cell(ms, mq, acc)
                progress = True
        return progress

    def _solvable_diag(self, i: int):
        """(unknown, xor_cost) for diagonal row i when it has exactly one
        unknown, else None.  Cost counts payable terms: known real cells
        and known non-structurally-zero common bits."""
        p = self.p
        fpos, gpos = self._diag_positions(i)
        mu = self._s_index(i)
        unknowns = []
        cost = 0
        if self.known[0][fpos]:
            if fpos < p.rows:
                cost += 1
        else:
            unknowns.append(("F", fpos))
        if self.known[1][gpos]:
            if gpos < p.rows:
                cost += 1
        else:
            unknowns.append(("G", gpos))
        if mu is not None:
            if self.s_known[mu]:
                if not self.s_struct_zero[mu]:
                    cost += 1
            else:
                unknowns.append(("S", mu))
        if len(unknowns) != 1:
            return None
        return unknowns[0], cost

    def _solve_diag(self, i: int, target) -> None:
        p = self.p
        fpos, gpos = self._diag_positions(i)
        mu = self._s_index(i)
        acc = self.syn.diag_syn[i]
        if self.known[0][fpos] and fpos < p.rows:
            acc = xor_lanes(acc, self.val[0][fpos], self.counter)
        if self.known[1][gpos] and gpos < p.rows:
            acc = xor_lanes(acc, self.val[1][gpos], self.counter)
        if mu is not None and self.s_known[mu] and not self.s_struct_zero[mu]:
            acc = xor_lanes(acc, self.s_val[mu], self.counter)
        kind, where = target
        if kind == "F":
            self._set_cell(0, where, acc)
        elif kind == "G":
            self._set_cell(1, where, acc)
        else:
            self.s_val[where] = acc
            self.s_known[where] = True

    def _rule_equations(self) -> bool:
        """Solve one syndrome equation, cheapest first: row equations cost
        one XOR, diagonal equations one or two depending on how many known
        terms must be folded in.  One solve per call so each new value can
        unlock a cheaper route for the next."""
        p = self.p
        for i in range(p.rows):
            # Row equation: F[i] ^ G[i] = row_syn[i].
            kf, kg = self.known[0][i], self.known[1][i]
            if kf != kg:
                side = 1 if kf else 0
                other = 0 if kf else 1
                lane = xor_lanes(self.syn.row_syn[i], self.val[other][i], self.counter)
                self._set_cell(side, i, lane)
                return True
        best = None
        for i in range(p.rows):
            hit = self._solvable_diag(i)
            if hit is None:
                continue
            target, cost = hit
            if best is None or cost < best[2]:
                best = (i, target, cost)
                if cost <= 1:
                    break
        if best is None:
            return False
        self._solve_diag(best[0], best[1])
        return True

    def _rule_sum(self) -> bool:
        """Last common bit from the parity-sum identity (needs n_c/t even,
        which the threshold rule guarantees)."""
        unknown = [mu for mu in range(self.p.t) if not self.s_known[mu]]
        if len(unknown) != 1:
            return False
        mu = unknown[0]
        acc = self.syn.sum_s
        for other in range(self.p.t):
            if other != mu and not self.s_struct_zero[other]:
                acc = xor_lanes(acc, self.s_val[other], self.counter)
        self.s_val[mu] = acc
        self.s_known[mu] = True
        return True

    # -- telescoping seeds ---------------------------------------------------

    def _seed_terms(self, a: int, length: int):
        """Structure of the telescope starting at diagonal row a with
        `length` diagonal equations of stride d.  Returns None when some
        needed diagonal row is virtual; otherwise (end_f_pos, start_g_pos,
        s_coeffs) with s_coeffs[mu] the GF(2) coefficient of S'[mu]."""
        p = self.p
        coeffs = [0] * p.t
        for step in range(length):
            i = (a + step * self.d) % p.ring
            if i >= p.rows:
                return None
            mu = self._s_index(i)
            if mu is not None:
                coeffs[mu] ^= 1
        end_f = (a + (length - 1) * self.d - self.f) % p.ring
        start_g = (a - self.d - self.f) % p.ring
        return end_f, start_g, coeffs

    def _try_seed(self, a: int, length: int, use_sum: bool) -> bool:
        terms = self._seed_terms(a, length)
        if terms is None:
            return False
        end_f, start_g, coeffs = terms
        if use_sum:
            coeffs = [c ^ 1 for c in coeffs]
        unknowns = []
        if not self.known[0][end_f]:
            unknowns.append(("F", end_f))
        if not self.known[1][start_g]:
            unknowns.append(("G", start_g))
        for mu in range(self.p.t):
            if coeffs[mu] and not self.s_known[mu]:
                unknowns.append(("S", mu))
        if len(unknowns) != 1:
            return False
        p = self.p
        acc = None
        for step in range(length):
            acc = self._xor(acc, self.syn.diag_syn[(a + step * self.d) % p.ring])
        for step in range(length - 1):
            pos = (a - self.f + step * self.d) % p.ring
            if pos < p.rows:
                acc = self._xor(acc, self.syn.row_syn[pos])
        if use_sum:
            acc = self._xor(acc, self.syn.sum_s)
        for mu in range(p.t):
            if coeffs[mu] and self.s_known[mu] and not self.s_struct_zero[mu]:
                acc = self._xor(acc, self.s_val[mu])
        if self.known[0][end_f] and end_f < p.rows:
            acc = self._xor(acc, self.val[0][end_f])
        if self.known[1][start_g] and start_g < p.rows:
            acc = self._xor(acc, self.val[1][start_g])
        kind, where = unknowns[0]
        if kind == "F":
            self._set_cell(0, where, acc)
        elif kind == "G":
            self._set_cell(1, where, acc)
        else:
            self.s_val[where] = acc
            self.s_known[where] = True
        return True

    def _rule_seed(self) -> bool:
        p = self.p
        orbit = p.ring // math.gcd(self.d, p.ring)
        # First stall of a stride-divisible pattern: seed every chain
        # offset m = 0..d-1 up front, the way the recursive walks do.
        if not self._did_stride_seeds:
            self._did_stride_seeds = True
            if p.rows % self.d == 0:
                progress = False
                for m in range(self.d):
                    for length in range(1, orbit + 1):
                        if self._try_seed(m, length, False) or self._try_seed(
                            m, length, True
                        ):
                            progress = True
                            break
                if progress:
                    return True
        # General search: shortest telescope first, lowest start row first.
        for length in range(1, orbit + 1):
            for a in range(p.ring):
                for use_sum in (False, True):
                    if self._try_seed(a, length, use_sum):
                        return True
        return False

    # -- driver --------------------------------------------------------------

    def run(self) -> tuple[list[Lane], list[Lane]]:
        p = self.p
        while True:
            if self._rule_links():
                continue
            if self._rule_equations():
                continue
            if all(self.known[0][q] and self.known[1][q] for q in range(p.rows)):
                break
            if self._rule_sum():
                continue
            if self._rule_seed():
                continue
            missing = [
                (side, q)
                for side in range(2)
                for q in range(p.rows)
                if not self.known[side][q]
            ]
            raise ChainStall(
                f"no rule makes progress for columns ({self.f},{self.g}) of "
                f"{p}; {len(missing)} cells unresolved (rank-deficient pair "
                "or decoder bug)"
            )
        # Recovered common bits must match their definitions.
        for mu in range(p.t):
            if not self.s_known[mu]:
                continue
            acc = zero_lane(self.width)
            for s, q in self.s_parts[mu]:
                acc = xor_lanes(acc, self.val[s][q])
            if acc != self.s_val[mu]:
                raise ChainStall(
                    f"common bit {mu} inconsistent after decode of "
                    f"({self.f},{self.g}) of {p}"
                )
        return (
            [self.val[0][q] for q in range(p.rows)],
            [self.val[1][q] for q in range(p.rows)],
        )


def decode_two_info(
    array: CodeArray, f: int, g: int, tally=None
) -> tuple[list[Lane], list[Lane]]:
    """Recover two erased information columns f < g.

    The returned pair of columns is also written back into the array.
    `tally`, when given, is a metrics.DecodeTally whose sub-counters see
    the parity-sum, syndrome-reduction and chain-solving XORs separately.
    """
    if not (0 <= f < g < array.params.k):
        raise ValueError(f"need two information columns, got ({f},{g})")
    reduce_counter = tally.reduce if tally is not None else None
    sum_counter = tally.sum_common if tally is not None else None
    chase_counter = tally.chase if tally is not None else None
    syn = build_syndromes(array, f, g, reduce_counter, sum_counter)
    col_f, col_g = _PairEngine(array, syn, chase_counter).run()
    array.set_column(f, col_f)
    array.set_column(g, col_g)
    return col_f, col_g


def decode_info_via_row_parity(
    array: CodeArray, f: int, pattern: ErasurePattern | None = None, counter=None
) -> list[Lane]:
    """Recover information column f from the row-parity column."""
    p = array.params
    if pattern is not None and p.k in pattern.erased:
        raise RowParityMissing("row-parity column is erased")
    column = []
    for i in range(p.rows):
        acc = array.get(i, p.k)
        for j in range(p.k):
            if j != f:
                acc = xor_lanes(acc, array.get(i, j), counter)
        column.append(acc)
    array.set_column(f, column)
    return column


def decode_info_with_diag_parity(
    array: CodeArray, f: int, pattern: ErasurePattern | None = None, counter=None
) -> list[Lane]:
    """Recover information column f from the diagonal-parity column
    (row parity unavailable).

    For f = 0 every common bit is computable from the surviving columns
    and each diagonal row inverts directly.  For f >= 1 the rows f-1 down
    to max(0, f-t) of the diagonal column each pin one column-f common-bit
    participant (their direct diagonal term is virtual), after which all
    common bits are known and the remaining rows invert.
    """
    p = array.params
    if pattern is not None and p.k + 1 in pattern.erased:
        raise DiagParityMissing("diagonal-parity column is erased")

    width = array.lane_width
    known: dict[int, Lane] = {}

    def survivors(i: int) -> Lane:
        acc = array.get(i, p.k + 1)
        for j in range(p.k):
            if j == f:
                continue
            r = (i - j) % p.ring
            if r < p.rows:
                acc = xor_lanes(acc, array.get(r, j), counter)
        return acc

    # Reduced common bits: surviving participants XORed up; the column-f
    # participant (real exactly when mu < f) is filled in below.
    s_partials: list[Lane] = []
    s_f_part: list[int | None] = []
    for mu in range(p.t):
        acc = zero_lane(width)
        for r, j in common_bit_participants(p, mu):
            if j != f:
                acc = xor_lanes(acc, array.get(r, j), counter)
        s_partials.append(acc)
        s_f_part.append((p.rows + mu - f) % p.ring if mu < f else None)

    seed_rows = range(f - 1, max(0, f - p.t) - 1, -1) if f >= 1 else range(0)
    for i in seed_rows:
        mu = i % p.t
        cell_pos = s_f_part[mu]
        assert cell_pos is not None
        # Diagonal term of column f at row i is virtual here (i - f lands
        # in the virtual band), so the only unknown is the participant.
        lane = xor_lanes(survivors(i), s_partials[mu], counter)
        known[cell_pos] = lane

    s_full: list[Lane] = []
    for mu in range(p.t):
        pos = s_f_part[mu]
        if pos is None:
            s_full.append(s_partials[mu])
        else:
            s_full.append(xor_lanes(s_partials[mu], known[pos], counter))

    seed_set = set(seed_rows)
    for i in range(p.rows):
        if i in seed_set:
            continue
        r = (i - f) % p.ring
        if r >= p.rows:
            continue
        acc = survivors(i)
        if i < p.n_c:
            acc = xor_lanes(acc, s_full[i % p.t], counter)
        known[r] = acc

    if len(known) != p.rows:
        raise ChainStall(
            f"diagonal recovery of column {f} left {p.rows - len(known)} cells"
        )
    column = [known[i] for i in range(p.rows)]
    array.set_column(f, column)
    return column


def _reencode_parity(array: CodeArray, columns: set[int], counter=None) -> None:
    scratch = array.copy()
    encode(scratch, counter)
    p = array.params
    for c in columns:
        array.set_column(c, scratch.column(c))


def decode(array: CodeArray, pattern: ErasurePattern, tally=None) -> CodeArray:
    """Restore all erased columns in place and return the array.

    Cells of erased columns are treated as unknown (they are zeroed before
    recovery); every other column must be intact.
    """
    p = array.params
    pattern.validate(p)
    erased = set(pattern.erased)
    zero = zero_lane(array.lane_width)
    for c in erased:
        for i in range(p.rows):
            array.set(i, c, zero)

    counter = tally.chase if tally is not None else None
    info = sorted(c for c in erased if c < p.k)
    parity = {c for c in erased if c >= p.k}

    if len(info) == 2:
        decode_two_info(array, info[0], info[1], tally)
    elif len(info) == 1:
        f = info[0]
        if p.k in parity:
            decode_info_with_diag_parity(array, f, pattern, counter)
        else:
            decode_info_via_row_parity(array, f, pattern, counter)
    if parity:
        _reencode_parity(array, parity, counter)
    return array
