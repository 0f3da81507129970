"""Finite code instances sampled from either ensemble, with exact checks.

Sampling is deterministic given a 64-bit seed (numpy PCG64 seeded through
SeedSequence; per-trial seeds are derived with spawn keys, so Monte Carlo
aggregates do not depend on scheduling or thread count).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from . import gf2
from .ensemble import (
    UnstructuredEnsemble,
    VnRegularEnsemble,
    validate_finite_instance,
)
from .gf2 import DimensionLimitError

VN_REGULAR = "vn_regular"
UNSTRUCTURED = "unstructured"

#: Largest code dimension min_distance will enumerate exhaustively.
DEFAULT_K_LIMIT = 28


@dataclass(frozen=True)
class SampledCode:
    """One Tanner-graph instance: per-CN ordered socket lists over VN indices.

    Socket lists may repeat a VN (multi-edges are legal in both ensembles,
    and weight-1 codewords exist precisely because of them).
    """

    n: int
    types: Tuple  # CheckNodeType per type index
    cns: Tuple[Tuple[int, Tuple[int, ...]], ...]
    vn_degrees: Tuple[int, ...]
    seed: int
    ensemble: str

    def __post_init__(self):
        degs = [0] * self.n
        for t, sockets in self.cns:
            if len(sockets) != self.types[t].s:
                raise ValueError(
                    f"type-{t} CN has {len(sockets)} sockets, expected {self.types[t].s}"
                )
            for v in sockets:
                degs[v] += 1
        if tuple(degs) != self.vn_degrees:
            raise ValueError("socket lists do not realize the stated VN degrees")
        if self.types and any(t.parity is None for t in self.types):
            raise ValueError("every CN type needs an explicit parity matrix")


def _rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _trial_seed(base_seed: int, trial: int) -> int:
    child = np.random.SeedSequence(base_seed, spawn_key=(trial,))
    return int(child.generate_state(1, np.uint64)[0])


def sample_vn_regular(spec: VnRegularEnsemble, n: int, rng_seed: int) -> SampledCode:
    """Draw one code: a block-diagonal CN layer plus q-1 column permutations.

    Layer 1 attaches CNs to consecutive VN indices in type order; each
    further layer applies an independent uniform permutation of the VNs.
    """
    plan = validate_finite_instance(spec, n)
    rng = _rng_for(rng_seed)
    layout: List[Tuple[int, int, int]] = []  # (type, start, stop) in layer order
    pos = 0
    for t, count in enumerate(plan.per_layer_cn_counts or ()):
        s = spec.mixture.types[t].s
        for _ in range(count):
            layout.append((t, pos, pos + s))
            pos += s
    cns: List[Tuple[int, Tuple[int, ...]]] = []
    for layer in range(spec.q):
        if layer == 0:
            perm = np.arange(n)
        else:
            perm = rng.permutation(n)
        for t, start, stop in layout:
            cns.append((t, tuple(int(v) for v in perm[start:stop])))
    return SampledCode(
        n=n,
        types=spec.mixture.types,
        cns=tuple(cns),
        vn_degrees=(spec.q,) * n,
        seed=rng_seed,
        ensemble=VN_REGULAR,
    )


def sample_unstructured(spec: UnstructuredEnsemble, n: int,
                        rng_seed: int) -> SampledCode:
    """Draw one configuration-model code: a uniform matching of edge sockets."""
    plan = validate_finite_instance(spec, n)
    rng = _rng_for(rng_seed)
    vn_degrees: List[int] = []
    for d, count in plan.vn_degree_counts:
        vn_degrees.extend([d] * count)
    vn_sockets = np.repeat(np.arange(n), vn_degrees)
    matched = rng.permutation(vn_sockets)
    cns: List[Tuple[int, Tuple[int, ...]]] = []
    pos = 0
    for t, count in enumerate(plan.cn_counts):
        s = spec.mixture.types[t].s
        for _ in range(count):
            cns.append((t, tuple(int(v) for v in matched[pos:pos + s])))
            pos += s
    return SampledCode(
        n=n,
        types=spec.mixture.types,
        cns=tuple(cns),
        vn_degrees=tuple(vn_degrees),
        seed=rng_seed,
        ensemble=UNSTRUCTURED,
    )


def _local_word(v_mask: int, sockets: Sequence[int]) -> int:
    w = 0
    for p, v in enumerate(sockets):
        if (v_mask >> v) & 1:
            w |= 1 << p
    return w


def _satisfies(code: SampledCode, t: int, word: int) -> bool:
    return all(gf2.dot_parity(row, word) == 0 for row in code.types[t].parity)


def is_codeword(code: SampledCode, v: Union[Sequence[int], int]) -> bool:
    """True iff every CN sees a local codeword on its sockets, in order."""
    if isinstance(v, int):
        mask = v
    else:
        if len(v) != code.n:
            raise ValueError(f"vector length {len(v)} != block length {code.n}")
        mask = 0
        for i, b in enumerate(v):
            if b:
                mask |= 1 << i
    return all(_satisfies(code, t, _local_word(mask, sockets))
               for t, sockets in code.cns)


def global_parity_rows(code: SampledCode) -> List[int]:
    """Rows of the stacked parity-check matrix over the N VN columns.

    A VN hitting two local positions of the same row cancels over GF(2).
    """
    rows = []
    for t, sockets in code.cns:
        for local_row in code.types[t].parity:
            row = 0
            for p, v in enumerate(sockets):
                if (local_row >> p) & 1:
                    row ^= 1 << v
            rows.append(row)
    return rows


def min_distance(code: SampledCode, k_limit: int = DEFAULT_K_LIMIT
                 ) -> Union[int, float]:
    """Exact minimum distance by enumerating all 2^k - 1 nonzero codewords.

    Returns math.inf for the zero code; refuses (DimensionLimitError) when
    the code dimension exceeds k_limit.
    """
    rows = global_parity_rows(code)
    basis = gf2.nullspace_basis(rows, code.n)
    k = len(basis)
    if k == 0:
        return math.inf
    if k > k_limit:
        raise DimensionLimitError(k, k_limit, "codeword enumeration")
    best = code.n + 1
    word = 0
    for i in range(1, 1 << k):
        word ^= basis[(i & -i).bit_length() - 1]
        w = word.bit_count()
        if w < best:
            best = w
            if best == 1:
                break
    return best


def has_weight_one_codeword(code: SampledCode) -> bool:
    """True iff setting a single VN to 1 satisfies every incident CN.

    Checked locally per VN: each CN touching the VN must accept the local
    word supported exactly on that VN's positions.
    """
    incidence: Dict[int, Dict[int, int]] = {}
    for ci, (t, sockets) in enumerate(code.cns):
        for p, v in enumerate(sockets):
            incidence.setdefault(v, {})
            incidence[v][ci] = incidence[v].get(ci, 0) | (1 << p)
    for v, touched in incidence.items():
        if all(_satisfies(code, code.cns[ci][0], word)
               for ci, word in touched.items()):
            return True
    return False


def wilson_interval(count: int, total: int, z: float = 1.959963984540054
                    ) -> Tuple[float, float]:
    """95% Wilson score interval for a binomial fraction."""
    if total == 0:
        return (0.0, 1.0)
    p = count / total
    z2 = z * z
    denom = 1 + z2 / total
    center = (p + z2 / (2 * total)) / denom
    half = z * math.sqrt(p * (1 - p) / total + z2 / (4 * total * total)) / denom
    lo = 0.0 if count == 0 else max(0.0, center - half)
    hi = 1.0 if count == total else min(1.0, center + half)
    return (lo, hi)


@dataclass(frozen=True)
class DminStats:
    """Monte Carlo counts of small-minimum-distance events.

    count_le_threshold counts min distance <= floor(threshold_alpha * n);
    trials whose dimension exceeded the enumeration limit are reported in
    count_k_over_limit and excluded from that fraction's denominator.
    """

    trials: int
    n: int
    threshold_alpha: float
    threshold_d: int
    count_eq_one: int
    count_le_threshold: int
    count_k_over_limit: int
    wilson_ci_eq_one: Tuple[float, float]
    wilson_ci_le_threshold: Tuple[float, float]
    seed: int


def _run_trial(spec, n: int, seed: int, threshold_d: int, k_limit: int
               ) -> Tuple[bool, Optional[bool]]:
    """(weight-1 found, min distance <= threshold or None if over limit)."""
    if isinstance(spec, VnRegularEnsemble):
        code = sample_vn_regular(spec, n, seed)
    else:
        code = sample_unstructured(spec, n, seed)
    one = has_weight_one_codeword(code)
    if threshold_d < 1:
        return one, False
    if one:
        return one, True
    if threshold_d == 1:
        return one, False
    try:
        return one, min_distance(code, k_limit) <= threshold_d
    except DimensionLimitError:
        return one, None


def estimate_dmin_stats(
    spec: Union[VnRegularEnsemble, UnstructuredEnsemble],
    n: int,
    trials: int,
    alpha_threshold: float,
    rng_seed: int,
    k_limit: int = DEFAULT_K_LIMIT,
    threads: Optional[int] = None,
) -> DminStats:
    """Sample `trials` codes and count weight-1 / small-distance events.

    Per-trial seeds derive from rng_seed, so results are independent of
    thread count and identical across runs.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    validate_finite_instance(spec, n)
    threshold_d = math.floor(alpha_threshold * n)
    seeds = [_trial_seed(rng_seed, i) for i in range(trials)]
    workers = threads if threads is not None else _env_threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda s: _run_trial(spec, n, s, threshold_d, k_limit), seeds)
            )
    else:
        results = [_run_trial(spec, n, s, threshold_d, k_limit) for s in seeds]
    eq_one = sum(1 for one, _ in results if one)
    over = sum(1 for _, le in results if le is None)
    le_count = sum(1 for _, le in results if le)
    measurable = trials - over
    return DminStats(
        trials=trials,
        n=n,
        threshold_alpha=alpha_threshold,
        threshold_d=threshold_d,
        count_eq_one=eq_one,
        count_le_threshold=le_count,
        count_k_over_limit=over,
        wilson_ci_eq_one=wilson_interval(eq_one, trials),
        wilson_ci_le_threshold=wilson_interval(le_count, measurable),
        seed=rng_seed,
    )


def _env_threads() -> int:
    raw = os.environ.get("GLDPC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1
