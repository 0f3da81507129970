"""GF(2) linear algebra on int bitsets (bit i of a row = column i)."""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple


class DimensionLimitError(ValueError):
    """Raised when an exhaustive enumeration would exceed its dimension cap."""

    def __init__(self, dim: int, limit: int, what: str = "enumeration"):
        self.dim = dim
        self.limit = limit
        super().__init__(
            f"{what} refused: effective dimension {dim} exceeds limit {limit}"
        )


def parse_bits(bits: str) -> int:
    """Bitmask from a string like '1101' (first character = column 0)."""
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit character {ch!r} in {bits!r}")
    return mask


def bits_to_string(mask: int, n_cols: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n_cols))


def row_reduce(rows: Sequence[int], n_cols: int) -> Tuple[List[int], List[int]]:
    """Reduced row echelon form. Returns (pivot columns, nonzero reduced rows)."""
    work = [r for r in rows if r]
    pivots: List[int] = []
    reduced: List[int] = []
    for col in range(n_cols):
        pivot_row = None
        for i, r in enumerate(work):
            if (r >> col) & 1:
                pivot_row = work.pop(i)
                break
        if pivot_row is None:
            continue
        for i, r in enumerate(work):
            if (r >> col) & 1:
                work[i] = r ^ pivot_row
        reduced = [r ^ pivot_row if (r >> col) & 1 else r for r in reduced]
        reduced.append(pivot_row)
        pivots.append(col)
        work = [r for r in work if r]
    return pivots, reduced


def rank(rows: Sequence[int], n_cols: int) -> int:
    return len(row_reduce(rows, n_cols)[0])


def nullspace_basis(rows: Sequence[int], n_cols: int) -> List[int]:
    """Basis of the right null space {v : row . v = 0 for all rows}."""
    pivots, reduced = row_reduce(rows, n_cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for pcol, prow in zip(pivots, reduced):
            if (prow >> free) & 1:
                v |= 1 << pcol
        basis.append(v)
    return basis


def span_weight_histogram(basis: Sequence[int], n_cols: int) -> List[int]:
    """Hamming-weight histogram of the span of `basis` (Gray-code walk)."""
    hist = [0] * (n_cols + 1)
    hist[0] = 1
    word = 0
    for i in range(1, 1 << len(basis)):
        word ^= basis[(i & -i).bit_length() - 1]
        hist[word.bit_count()] += 1
    return hist


def dot_parity(row: int, v: int) -> int:
    return (row & v).bit_count() & 1


def all_ones_row(s: int) -> List[int]:
    """Parity-check matrix of the length-s single parity check code."""
    return [(1 << s) - 1]


def hamming_parity(s: int) -> List[int]:
    """Standard parity-check matrix of the length-s Hamming code.

    Column j (1-based) is the binary representation of j, so s must be
    2^m - 1 with m >= 2.
    """
    m = (s + 1).bit_length() - 1
    if s < 3 or (1 << m) != s + 1:
        raise ValueError(f"invalid Hamming length {s}: s + 1 must be a power of two")
    rows = []
    for i in range(m):
        r = 0
        for j in range(1, s + 1):
            if (j >> i) & 1:
                r |= 1 << (j - 1)
        rows.append(r)
    return rows


def matrix_from_rows(rows: Iterable[Sequence[int] | str], n_cols: int) -> List[int]:
    """Bitmask rows from 0/1 sequences or bit strings."""
    out = []
    for row in rows:
        if isinstance(row, str):
            if len(row) != n_cols:
                raise ValueError(f"row {row!r} has length {len(row)}, expected {n_cols}")
            out.append(parse_bits(row))
        else:
            if len(row) != n_cols:
                raise ValueError(f"row has length {len(row)}, expected {n_cols}")
            mask = 0
            for i, b in enumerate(row):
                if b not in (0, 1):
                    raise ValueError(f"matrix entries must be 0/1, got {b!r}")
                mask |= b << i
            out.append(mask)
    return out
