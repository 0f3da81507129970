"""Exact integer polynomials and weight enumerating functions (WEFs).

Polynomials are tuples of arbitrary-precision integer coefficients indexed
by exponent. A WEF counts the codewords of a binary linear code by Hamming
weight; coefficients are kept exact, and asymptotic formulas consume WEFs
through stable log-domain evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from . import gf2
from .gf2 import DimensionLimitError

IntPoly = Tuple[int, ...]

ONE: IntPoly = (1,)

#: Largest code/dual dimension wef_from_parity_matrix will enumerate.
ENUMERATION_LIMIT = 30


def poly_normalize(coeffs: Sequence[int]) -> IntPoly:
    """Drop trailing zeros; the zero polynomial becomes the empty tuple."""
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


def poly_mul(a: Sequence[int], b: Sequence[int], trunc: Optional[int] = None) -> IntPoly:
    """Exact coefficient convolution, optionally truncated to degree <= trunc."""
    if not a or not b:
        return ()
    deg = len(a) + len(b) - 2
    if trunc is not None:
        deg = min(deg, trunc)
    out = [0] * (deg + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > deg:
            continue
        top = deg - i
        for j, bj in enumerate(b):
            if j > top:
                break
            if bj:
                out[i + j] += ai * bj
    return poly_normalize(out)


def poly_pow(a: Sequence[int], n: int, trunc: Optional[int] = None) -> IntPoly:
    """n-th power by binary exponentiation; a**0 == (1,)."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    result: IntPoly = ONE
    base = poly_normalize(a) if trunc is None else poly_normalize(a[: trunc + 1])
    while n:
        if n & 1:
            result = poly_mul(result, base, trunc)
        n >>= 1
        if n:
            base = poly_mul(base, base, trunc)
    return result


def coef(p: Sequence[int], i: int) -> int:
    """Coefficient of x**i; zero beyond the degree."""
    if i < 0:
        raise ValueError("exponent must be nonnegative")
    return p[i] if i < len(p) else 0


@dataclass(frozen=True)
class Wef:
    """Weight enumerating function of an (length, dim) binary linear code.

    coeffs[u] is the exact number of weight-u codewords. min_dist is the
    smallest nonzero codeword weight, or None for the zero-dimensional code.
    """

    coeffs: IntPoly
    length: int
    dim: int
    min_dist: Optional[int]

    def __post_init__(self):
        c = self.coeffs
        if len(c) != self.length + 1:
            raise ValueError(
                f"WEF has {len(c)} coefficients, expected length+1 = {self.length + 1}"
            )
        if c[0] != 1:
            raise ValueError("WEF must have exactly one weight-0 codeword")
        if any(a < 0 for a in c):
            raise ValueError("WEF coefficients must be nonnegative")
        if sum(c) != 1 << self.dim:
            raise ValueError(
                f"WEF coefficients sum to {sum(c)}, expected 2^{self.dim}"
            )
        first = next((u for u in range(1, len(c)) if c[u]), None)
        if first != self.min_dist:
            raise ValueError(
                f"stated minimum distance {self.min_dist} does not match "
                f"first nonzero weight {first}"
            )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], length: Optional[int] = None) -> "Wef":
        """Build a Wef from raw coefficients, deriving dim and min_dist."""
        if length is None:
            length = len(coeffs) - 1
        c = tuple(coeffs) + (0,) * (length + 1 - len(coeffs))
        total = sum(c)
        dim = total.bit_length() - 1
        if 1 << dim != total:
            raise ValueError(f"coefficient sum {total} is not a power of two")
        first = next((u for u in range(1, len(c)) if c[u]), None)
        return cls(coeffs=c, length=length, dim=dim, min_dist=first)

    @property
    def degree(self) -> int:
        """Largest weight with a nonzero coefficient."""
        for u in range(self.length, -1, -1):
            if self.coeffs[u]:
                return u
        return 0


def wef_spc(s: int) -> Wef:
    """WEF of the (s, s-1) single parity check code: even-weight words."""
    if s < 2:
        raise ValueError(f"invalid SPC length {s}: need s >= 2")
    coeffs = tuple(math.comb(s, u) if u % 2 == 0 else 0 for u in range(s + 1))
    return Wef(coeffs=coeffs, length=s, dim=s - 1, min_dist=2)


def wef_hamming(s: int) -> Wef:
    """WEF of the length-s Hamming code, s = 2^m - 1.

    Closed form ((1+z)^s + s (1+z)^((s-1)/2) (1-z)^((s+1)/2)) / (s+1),
    evaluated in exact integer arithmetic; the final division must be exact.
    """
    m = (s + 1).bit_length() - 1
    if s < 3 or (1 << m) != s + 1:
        raise ValueError(f"invalid Hamming length {s}: s + 1 must be a power of two")
    a = poly_pow((1, 1), s)
    b = poly_mul(poly_pow((1, 1), (s - 1) // 2), poly_pow((1, -1), (s + 1) // 2))
    total = [x + s * y for x, y in zip(a, b)]
    coeffs = []
    for u, v in enumerate(total):
        q, rem = divmod(v, s + 1)
        if rem:
            raise ArithmeticError(f"inexact division at weight {u} in Hamming closed form")
        coeffs.append(q)
    return Wef(coeffs=tuple(coeffs), length=s, dim=s - m, min_dist=3)


def wef_from_parity_matrix(
    rows: Sequence[int], n_cols: int, max_dim: int = ENUMERATION_LIMIT
) -> Wef:
    """Exact WEF of the null space of a GF(2) parity-check matrix.

    Enumerates whichever of the code and its dual has smaller dimension
    and applies the MacWilliams transform if the dual was enumerated.
    """
    pivots, reduced = gf2.row_reduce(rows, n_cols)
    r = len(pivots)
    k = n_cols - r
    if min(k, r) > max_dim:
        raise DimensionLimitError(min(k, r), max_dim, "null-space enumeration")
    if k <= r:
        hist = gf2.span_weight_histogram(gf2.nullspace_basis(rows, n_cols), n_cols)
        return Wef(coeffs=poly_with_len(hist, n_cols), length=n_cols, dim=k,
                   min_dist=_first_nonzero(hist))
    dual_hist = gf2.span_weight_histogram(reduced, n_cols)
    dual = Wef(coeffs=poly_with_len(dual_hist, n_cols), length=n_cols, dim=r,
               min_dist=_first_nonzero(dual_hist))
    return macwilliams(dual)


def poly_with_len(hist: Sequence[int], length: int) -> IntPoly:
    return tuple(hist) + (0,) * (length + 1 - len(hist))


def _first_nonzero(hist: Sequence[int]) -> Optional[int]:
    return next((u for u in range(1, len(hist)) if hist[u]), None)


def macwilliams(w: Wef) -> Wef:
    """WEF of the dual code via the MacWilliams transform.

    B(z) = 2^-k sum_u A_u (1-z)^u (1+z)^(s-u); every division is exact.
    """
    s = w.length
    plus = [ONE]
    minus = [ONE]
    for _ in range(s):
        plus.append(poly_mul(plus[-1], (1, 1)))
        minus.append(poly_mul(minus[-1], (1, -1)))
    acc = [0] * (s + 1)
    for u, a in enumerate(w.coeffs):
        if a == 0:
            continue
        term = poly_mul(minus[u], plus[s - u])
        for i, t in enumerate(term):
            acc[i] += a * t
    scale = 1 << w.dim
    coeffs = []
    for u, v in enumerate(acc):
        q, rem = divmod(v, scale)
        if rem:
            raise ArithmeticError(
                f"inconsistent input WEF: inexact division at weight {u}"
            )
        coeffs.append(q)
    return Wef(coeffs=tuple(coeffs), length=s, dim=s - w.dim,
               min_dist=_first_nonzero(coeffs))


def log_eval(w: Wef, z: float) -> float:
    """log A(z) in nats for z > 0, stable for huge coefficients and any z.

    Works term-wise in the log domain (log A_u + u log z, max factored out),
    so neither large z nor astronomically large coefficients overflow.
    """
    if z <= 0:
        raise ValueError(f"z must be positive, got {z}")
    logz = math.log(z)
    terms = [math.log(a) + u * logz for u, a in enumerate(w.coeffs) if a]
    top = max(terms)
    return top + math.log(math.fsum(math.exp(t - top) for t in terms))
