"""Ground truth by exhaustion.

One pass over F_{q^t}* (as powers of gamma_t) buckets every element by
(exact subfield degree, trace to F_q, discrete log of the norm mod q-1).
From those buckets: N_t, T_t, and P_m for every (a, coset) cell at once.
Listing mode walks the matching Frobenius orbits and rebuilds minimal
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .counting import CountSpec
from .errors import InvariantError, ListingCapExceeded, OracleCapExceeded
from .fields import TowerCtx, build_tower, field_poly_is_irreducible, min_poly
from .intmath import divisors

DEFAULT_ORACLE_CAP = 1 << 22
DEFAULT_LISTING_CAP = 10**5


@dataclass
class BruteResult:
    """Bucketed counts from one exhaustive pass over F_{q^t}*.

    counts[di][label][w] is the number of x = gamma_t^e of exact degree
    divs[di] with Tr_m(x) having top-field index label and
    dlog_g(Norm_m(x)) = w.
    """

    tower: TowerCtx
    t: int
    divs: list[int]
    labels: list[int]
    counts: np.ndarray

    def cell(self, exact_degree: int, a_top_index: int, residue: int, s: int) -> int:
        """Count of exact-degree elements with trace a and norm-log = residue mod s."""
        if exact_degree not in self.divs or a_top_index not in self.labels:
            return 0
        di = self.divs.index(exact_degree)
        li = self.labels.index(a_top_index)
        row = self.counts[di, li]
        return int(row[residue % s :: s].sum()) if s > 1 else int(row.sum())


_scan_cache: dict[tuple, BruteResult] = {}


def _orbit_partitioned(tower, gamma, out_map, weights, length, jobs):
    """gamma-orbit values, split into contiguous ranges across a thread pool."""
    jobs = max(1, min(jobs, length // 4096 + 1))
    if jobs == 1:
        return tower.top.linear_orbit(gamma, out_map, length, weights=weights)
    from concurrent.futures import ThreadPoolExecutor

    bounds = [length * k // jobs for k in range(jobs + 1)]

    def work(k):
        start, stop = bounds[k], bounds[k + 1]
        return tower.top.linear_orbit(
            gamma, out_map, stop - start, weights=weights, start=start
        )

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(work, range(jobs)))
    return np.concatenate(parts)


def brute_scan(
    tower: TowerCtx, t: int, cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1
) -> BruteResult:
    """Exhaustive bucketing pass over F_{q^t}* inside the tower.

    The orbit walk partitions cleanly: with jobs > 1 each worker generates
    a contiguous exponent range from its own seed power, and the histograms
    merge by addition, so the result is independent of jobs.
    """
    q, m = tower.q, tower.m
    big_q = q**t - 1
    if big_q + 1 > cap:
        raise OracleCapExceeded(f"q^t = {big_q + 1} exceeds the oracle cap {cap}")
    key = (tower.p, tower.r, tower.m, t)
    if key in _scan_cache:
        return _scan_cache[key]
    # trace labels: Tr_{F_{q^m} -> F_q}(x) for x = gamma_t^e, as top indices
    tr_map = tower.trace_matrix(1)
    weights = tower.top.power_weights()
    labels_arr = _orbit_partitioned(tower, tower.gamma[t], tr_map, weights, big_q, jobs)
    uniq, inverse = np.unique(labels_arr, return_inverse=True)
    nlab = len(uniq)
    e = np.arange(big_q, dtype=np.int64)
    # exact degree over F_q: smallest t' | t with x in F_{q^t'}
    divs = divisors(t)
    deg_pos = np.full(big_q, len(divs) - 1, dtype=np.int64)
    assigned = np.zeros(big_q, dtype=bool)
    for di, tt in enumerate(divs[:-1]):
        stride = big_q // (q**tt - 1)
        mask = (~assigned) & (e % stride == 0)
        deg_pos[mask] = di
        assigned |= mask
    # norm log: dlog_g Norm_m(gamma_t^e) = e * (m/t) mod (q - 1)
    wnorm = (e * (m // t)) % (q - 1) if q > 2 else np.zeros(big_q, dtype=np.int64)
    combined = (deg_pos * nlab + inverse) * (q - 1) + wnorm
    counts = np.bincount(combined, minlength=len(divs) * nlab * (q - 1))
    counts = counts.reshape(len(divs), nlab, q - 1)
    result = BruteResult(
        tower=tower, t=t, divs=divs, labels=[int(v) for v in uniq], counts=counts
    )
    _scan_cache[key] = result
    return result


def _spec_tower(spec: CountSpec) -> TowerCtx:
    return build_tower(spec.p, spec.r, spec.m)


def _h_for_tower(spec: CountSpec, tower: TowerCtx) -> int:
    return tower.dlog_g(spec.b) % spec.s if spec.s > 1 else 0


def brute_p_m(spec: CountSpec, cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1) -> int:
    """P_m by exhaustion: degree-exactly-m roots with matching (a, coset), / m."""
    tower = _spec_tower(spec)
    scan = brute_scan(tower, spec.m, cap, jobs)
    a_idx = tower.embed(spec.a).index
    h = _h_for_tower(spec, tower)
    total = scan.cell(spec.m, a_idx, h, spec.s)
    if total % spec.m != 0:
        raise InvariantError("root count must be divisible by m")
    return total // spec.m


def brute_t_t(spec: CountSpec, t: int, cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1) -> int:
    """|T_t|: elements of F_{q^t} of exact degree t meeting the (a, coset) cell."""
    tower = _spec_tower(spec)
    scan = brute_scan(tower, t, cap, jobs)
    a_idx = tower.embed(spec.a).index
    h = _h_for_tower(spec, tower)
    return scan.cell(t, a_idx, h, spec.s)


def brute_n_t(spec: CountSpec, t: int, cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1) -> int:
    """|S_t|: all x in F_{q^t} with Tr_m(x) = a and Norm_m(x) in the coset."""
    tower = _spec_tower(spec)
    scan = brute_scan(tower, t, cap, jobs)
    a_idx = tower.embed(spec.a).index
    h = _h_for_tower(spec, tower)
    return sum(scan.cell(tt, a_idx, h, spec.s) for tt in divisors(t))


def list_polys(
    spec: CountSpec,
    cap: int = DEFAULT_ORACLE_CAP,
    listing_cap: int = DEFAULT_LISTING_CAP,
    jobs: int = 1,
):
    """All matching degree-m irreducibles, as base-coefficient tuples low->high.

    Sorted lexicographically on the coefficient index vectors.  Every
    polynomial is re-verified: irreducible, monic, trace coefficient a,
    norm coefficient in the coset (Vieta against an actual root).
    """
    count = brute_p_m(spec, cap, jobs)
    if count > listing_cap:
        raise ListingCapExceeded(f"{count} polynomials exceed the listing cap {listing_cap}")
    tower = _spec_tower(spec)
    q, m = tower.q, spec.m
    big_q = q**m - 1
    a_idx = tower.embed(spec.a).index
    h = _h_for_tower(spec, tower)
    maximal = [m // ell for ell in set(_prime_factors(m))]
    polys = []
    gamma = tower.gamma[m]
    tr_map = tower.trace_matrix(1)
    weights = tower.top.power_weights()
    labels_arr = tower.top.linear_orbit(gamma, tr_map, big_q, weights=weights)
    e_arr = np.arange(big_q, dtype=np.int64)
    mask = labels_arr == a_idx
    if q > 2:
        mask &= (e_arr % (q - 1)) % spec.s == h
    for mm in maximal:
        mask &= e_arr % (big_q // (q**mm - 1)) != 0
    exps = e_arr[mask]
    seen = set()
    for e in exps.tolist():
        orbit = frozenset((e * q**i) % big_q for i in range(m))
        if min(orbit) != e or e in seen:
            continue
        seen.add(e)
        x = gamma**e
        coeffs, t = min_poly(tower, x)
        if t != m:
            raise InvariantError("orbit element does not have exact degree m")
        _verify_listed(spec, tower, x, coeffs)
        polys.append(tuple(c.index for c in coeffs))
    if len(polys) != count:
        raise InvariantError("listing does not match the bucket count")
    polys.sort()
    return polys


def _verify_listed(spec: CountSpec, tower: TowerCtx, root, coeffs):
    m = spec.m
    if not field_poly_is_irreducible(list(coeffs), spec.base):
        raise InvariantError("listed polynomial is not irreducible")
    # f = x^m - a x^{m-1} + ... + (-1)^m b: Vieta from the actual root
    tr = tower.to_base(tower.trace_rel(root, m))
    nrm = tower.to_base(tower.norm_rel(root, m))
    if not tr == spec.a:
        raise InvariantError("listed polynomial has the wrong trace coefficient")
    if not coeffs[m - 1] == -spec.a:
        raise InvariantError("coefficient of x^{m-1} must be -a")
    sign = spec.base.one if m % 2 == 0 else -spec.base.one
    if not coeffs[0] == sign * nrm:
        raise InvariantError("constant term must be (-1)^m b")
    if spec.s > 1:
        hb = tower.dlog_g(spec.b) % spec.s
        hn = tower.dlog_g(tower.embed(nrm)) % spec.s
        if hb != hn:
            raise InvariantError("listed polynomial has norm outside the coset")


def _prime_factors(n: int):
    from .intmath import factorize

    return list(factorize(n).keys())
