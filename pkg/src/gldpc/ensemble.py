"""Ensemble specifications and their derived scalar parameters.

A check-node (CN) mixture assigns each edge of the Tanner graph to a local
code type; the variable-node (VN) side is either a uniform degree q
(VnRegularEnsemble) or an edge-perspective degree distribution lambda
(UnstructuredEnsemble). Edge fractions are stored as exact rationals so
finite-instance divisibility checks never suffer float noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import gf2, polywef
from .polywef import Wef

RationalLike = Union[int, str, float, Fraction]

SUM_TOL = 1e-12


def to_fraction(x: RationalLike) -> Fraction:
    """Exact rational from int, Fraction, 'num/den' or decimal string, or float.

    Floats go through repr, so 0.05 means 1/20 rather than its binary image.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


class DivisibilityError(ValueError):
    """A finite instantiation requires a non-integer count."""

    def __init__(self, quantity: str, value: Fraction, nearest_n: int):
        self.quantity = quantity
        self.value = value
        self.nearest_n = nearest_n
        super().__init__(
            f"divisibility violation: {quantity} = {value} is not an integer; "
            f"nearest feasible block length is {nearest_n}"
        )


@dataclass(frozen=True)
class CheckNodeType:
    """A local code placed at check nodes: its WEF plus a parity-check matrix.

    The matrix rows are int bitmasks over `wef.length` columns. Minimum
    distance must be at least 2 for use at a CN.
    """

    wef: Wef
    parity: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.wef.min_dist is None or self.wef.min_dist < 2:
            raise ValueError(
                f"CN local code must have minimum distance >= 2, got {self.wef.min_dist}"
            )
        if self.parity is not None:
            s, k = self.wef.length, self.wef.dim
            if len(self.parity) != s - k:
                raise ValueError(
                    f"parity matrix has {len(self.parity)} rows, expected {s - k}"
                )
            if gf2.rank(self.parity, s) != s - k:
                raise ValueError("parity matrix is rank deficient")
            if polywef.wef_from_parity_matrix(self.parity, s) != self.wef:
                raise ValueError("parity matrix does not match the stated WEF")

    @property
    def s(self) -> int:
        return self.wef.length

    @property
    def k(self) -> int:
        return self.wef.dim

    @property
    def r(self) -> int:
        return self.wef.min_dist  # type: ignore[return-value]

    @classmethod
    def spc(cls, s: int) -> "CheckNodeType":
        return cls(wef=polywef.wef_spc(s), parity=tuple(gf2.all_ones_row(s)))

    @classmethod
    def hamming(cls, s: int) -> "CheckNodeType":
        return cls(wef=polywef.wef_hamming(s), parity=tuple(gf2.hamming_parity(s)))

    @classmethod
    def explicit(cls, rows: Sequence[int], n_cols: int) -> "CheckNodeType":
        wef = polywef.wef_from_parity_matrix(rows, n_cols)
        pivots, reduced = gf2.row_reduce(rows, n_cols)
        return cls(wef=wef, parity=tuple(reduced))


@dataclass(frozen=True)
class CnMixture:
    """CN types plus the fraction of edges attached to each type."""

    types: Tuple[CheckNodeType, ...]
    rho: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.types) != len(self.rho):
            raise ValueError("rho length must match the number of CN types")
        if not self.types:
            raise ValueError("mixture needs at least one CN type")
        if any(r <= 0 for r in self.rho):
            raise ValueError("every rho entry must be positive")
        total = sum(self.rho)
        if abs(float(total) - 1.0) > SUM_TOL:
            raise ValueError(f"rho must sum to 1 within {SUM_TOL}, got {float(total)}")
        if total != 1:
            object.__setattr__(
                self, "rho", tuple(r / total for r in self.rho)
            )

    @classmethod
    def of(cls, types: Sequence[CheckNodeType],
           rho: Sequence[RationalLike]) -> "CnMixture":
        return cls(types=tuple(types), rho=tuple(to_fraction(r) for r in rho))


@dataclass(frozen=True)
class VnRegularEnsemble:
    """All VNs have degree q >= 2; CN layers are stacked column permutations."""

    mixture: CnMixture
    q: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"VN degree must be >= 2, got {self.q}")


@dataclass(frozen=True)
class UnstructuredEnsemble:
    """Configuration-model ensemble with edge-perspective VN degrees lambda."""

    mixture: CnMixture
    lam: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        degrees = [d for d, _ in self.lam]
        if not degrees:
            raise ValueError("lambda needs at least one degree")
        if any(d < 2 for d in degrees):
            raise ValueError("VN degrees below 2 are not supported")
        if len(set(degrees)) != len(degrees):
            raise ValueError("duplicate VN degree in lambda")
        if any(f <= 0 for _, f in self.lam):
            raise ValueError("every lambda entry must be positive")
        total = sum(f for _, f in self.lam)
        if abs(float(total) - 1.0) > SUM_TOL:
            raise ValueError(f"lambda must sum to 1 within {SUM_TOL}, got {float(total)}")
        norm = tuple(sorted(((d, f / total) for d, f in self.lam)))
        object.__setattr__(self, "lam", norm)

    @classmethod
    def of(cls, mixture: CnMixture,
           lam: Dict[int, RationalLike]) -> "UnstructuredEnsemble":
        return cls(mixture=mixture,
                   lam=tuple((int(d), to_fraction(f)) for d, f in lam.items()))


def cns_per_edge_exact(m: CnMixture) -> Fraction:
    """Exact sum_t rho_t / s_t (the CN count per Tanner-graph edge)."""
    return sum((r / t.s for t, r in zip(m.types, m.rho)), Fraction(0))


def cns_per_edge(m: CnMixture) -> float:
    return float(cns_per_edge_exact(m))


def cn_type_fractions_exact(m: CnMixture) -> Tuple[Fraction, ...]:
    total = cns_per_edge_exact(m)
    return tuple(r / (t.s * total) for t, r in zip(m.types, m.rho))


def cn_type_fractions(m: CnMixture) -> Tuple[float, ...]:
    """Fraction of CNs of each type (node perspective of rho)."""
    return tuple(float(g) for g in cn_type_fractions_exact(m))


def weight_two_density_exact(m: CnMixture) -> Fraction:
    return 2 * sum(
        (r * t.wef.coeffs[2] / t.s
         for t, r in zip(m.types, m.rho) if t.r == 2),
        Fraction(0),
    )


def weight_two_density(m: CnMixture) -> float:
    """Twice the number of weight-2 local codewords per edge.

    Zero when no CN type has minimum distance 2. Governs the low-weight
    codeword behavior of the ensemble; linear-growth of the minimum
    distance at VN degree 2 requires this to be below 1.
    """
    return float(weight_two_density_exact(m))


def design_rate(spec: VnRegularEnsemble) -> float:
    """Design rate 1 - q (1 - sum_t rho_t k_t / s_t); may be negative."""
    inner = sum((r * t.k / t.s for t, r in zip(spec.mixture.types, spec.mixture.rho)),
                Fraction(0))
    return float(1 - spec.q * (1 - inner))


def degree_two_edge_fraction(spec: UnstructuredEnsemble) -> float:
    """Fraction of edges attached to degree-2 VNs (lambda'(0))."""
    for d, f in spec.lam:
        if d == 2:
            return float(f)
    return 0.0


def vns_per_edge_exact(spec: UnstructuredEnsemble) -> Fraction:
    return sum((f / d for d, f in spec.lam), Fraction(0))


def vn_degree_fractions(spec: UnstructuredEnsemble) -> Dict[int, float]:
    """Node-perspective VN degree fractions lambda_d / (d * int lambda)."""
    total = vns_per_edge_exact(spec)
    return {d: float(f / (d * total)) for d, f in spec.lam}


@dataclass(frozen=True)
class InstancePlan:
    """Exact integer counts for one finite code drawn from an ensemble."""

    n: int
    edges: int
    cn_total: int
    cn_counts: Tuple[int, ...]
    vn_degree_counts: Tuple[Tuple[int, int], ...]
    per_layer_cn_counts: Optional[Tuple[int, ...]] = None
    q: Optional[int] = None


def _feasible_n(constraints: List[Fraction]) -> int:
    lcm = 1
    for c in constraints:
        lcm = math.lcm(lcm, c.denominator)
    return lcm


def validate_finite_instance(
    spec: Union[VnRegularEnsemble, UnstructuredEnsemble], n: int
) -> InstancePlan:
    """Exact integer counts for block length n, or DivisibilityError.

    The error names the offending quantity and the smallest feasible
    block length at or above n.
    """
    if n < 1:
        raise ValueError(f"block length must be positive, got {n}")
    m = spec.mixture
    if isinstance(spec, VnRegularEnsemble):
        q = spec.q
        per_layer = [n * r / t.s for t, r in zip(m.types, m.rho)]
        unit = _feasible_n([r / t.s for t, r in zip(m.types, m.rho)])
        nearest = ((n + unit - 1) // unit) * unit
        for idx, c in enumerate(per_layer):
            if c.denominator != 1:
                raise DivisibilityError(
                    f"per-layer count of type-{idx} CNs (n*rho_t/s_t)", c, nearest
                )
        counts = tuple(int(c) * q for c in per_layer)
        return InstancePlan(
            n=n,
            edges=n * q,
            cn_total=sum(counts),
            cn_counts=counts,
            vn_degree_counts=((q, n),),
            per_layer_cn_counts=tuple(int(c) for c in per_layer),
            q=q,
        )

    # unstructured: counts scale with edges = n / int(lambda)
    vpe = vns_per_edge_exact(spec)
    inv_vpe = 1 / vpe
    node_frac = {d: f / (d * vpe) for d, f in spec.lam}
    constraints = [inv_vpe]
    constraints += list(node_frac.values())
    constraints += [inv_vpe * r / t.s for t, r in zip(m.types, m.rho)]
    unit = _feasible_n(constraints)
    nearest = ((n + unit - 1) // unit) * unit
    edges = n * inv_vpe
    if edges.denominator != 1:
        raise DivisibilityError("edge count (n / int lambda)", edges, nearest)
    vn_counts = []
    for d, f in node_frac.items():
        c = n * f
        if c.denominator != 1:
            raise DivisibilityError(f"count of degree-{d} VNs", c, nearest)
        vn_counts.append((d, int(c)))
    cn_counts = []
    for idx, (t, r) in enumerate(zip(m.types, m.rho)):
        c = edges * r / t.s
        if c.denominator != 1:
            raise DivisibilityError(f"count of type-{idx} CNs (E*rho_t/s_t)", c, nearest)
        cn_counts.append(int(c))
    return InstancePlan(
        n=n,
        edges=int(edges),
        cn_total=sum(cn_counts),
        cn_counts=tuple(cn_counts),
        vn_degree_counts=tuple(vn_counts),
    )
