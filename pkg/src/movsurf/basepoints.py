"""Base-point condition checks, decided by finite-dimensional linear algebra.

Before the determinantal construction is allowed to run, the parametrization
must pass six checks, reported as B1..B6:

  B1  the four input polynomials are linearly independent;
  B2  the common zero scheme of (a0..a3) is finite, of total degree k <= mn;
  B3  every base point is a local complete intersection, detected through the
      stabilized codimension of the squared ideal being exactly 3k;
  B4  the quotient dimension at bidegree (2m-1, 2n-1) already equals k, so the
      Hilbert function has stabilized at the start of the sampling window;
  B5  (a0,a1,a2) cut out the same finite scheme and a3 is a saturation member
      of the ideal they generate;
  B6  a0, a1, a2 admit no syzygy at bidegree (m-1, n-1).

B1-B4 are invariant under invertible linear recombination of the a_i, while
B5/B6 hold only in sufficiently general position; when just B5/B6 fail, a
seeded random recombination is applied and the checks rerun.

Degrees of zero-dimensional schemes are read off as stabilized values of the
Hilbert function dim (R/I)_{d,d'} sampled along a diagonal window, never via
primary decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import RatMatrix, SpanSolver, det_bareiss, kernel_basis, rank
from .ring import bidegree_leq, coeff_vector, monomial_basis
from .syzygy import (Parametrization, moving_planes, mult_matrix, syz_dim_abc)

CONDITION_NAMES = {
    "B1": "linear independence",
    "B2": "finite base locus, k <= mn",
    "B3": "local complete intersection",
    "B4": "regularity at window start",
    "B5": "same scheme from a0,a1,a2 and a3 saturation member",
    "B6": "no syzygy on a0,a1,a2",
}


@dataclass(frozen=True)
class CheckConfig:
    window: int = 3          # extra diagonal samples beyond the window start
    sat_bound: int = None    # None -> 2*max(m,n) + 2
    seed: int = 0
    attempts: int = 10       # coordinate-change retries when B5/B6 fail
    coord_bound: int = 10    # entry bound for random recombinations


@dataclass(frozen=True)
class SaturationResult:
    member: bool
    power: int = None        # least N certifying membership
    bound_reached: bool = False


@dataclass
class BasePointSummary:
    finite: bool
    k: int                   # None when the locus is not finite
    lci_proxy: bool
    stabilization_window: list
    hilbert_values: list
    hilbert_sq_values: list
    reason: str = None       # "growing" | "not_stabilized" when finite is False


@dataclass
class ConditionReport:
    verdicts: dict
    witnesses: dict
    k: int
    short_path: bool
    all_passed: bool
    failure: str
    phi: Parametrization            # the parametrization the verdicts describe
    coordinate_change: RatMatrix = None
    coordinate_seed: int = None
    summary: BasePointSummary = None

    def passed(self, name):
        return self.verdicts.get(name, False)


def hilbert_dim(generators, d):
    """dim of (R / <generators>) at bidegree d.

    Generators of bidegree not <= d contribute no multiples there and are
    skipped.
    """
    d = (int(d[0]), int(d[1]))
    full = (d[0] + 1) * (d[1] + 1)
    use = [g for g in generators if bidegree_leq(g.bidegree, d)]
    if not use:
        return full
    return full - rank(mult_matrix(use, d))


def check_independence(phi):
    """B1: the a_i span a 4-dimensional space of forms."""
    basis = monomial_basis((phi.m, phi.n))
    A = RatMatrix([coeff_vector(f, basis) for f in phi.a])
    return rank(A) == 4


def independence_witness(phi):
    """A dependency among the a_i (None when independent)."""
    basis = monomial_basis((phi.m, phi.n))
    A = RatMatrix.from_columns(
        [coeff_vector(f, basis) for f in phi.a], len(basis))
    kb = kernel_basis(A)
    return kb.vectors[0] if kb.vectors else None


def _classify(values):
    """Stabilization along the window: (finite, reason)."""
    if all(v == values[0] for v in values):
        return True, None
    for prev, cur in zip(values, values[1:]):
        if cur > prev:
            return False, "growing"
    return False, "not_stabilized"


def base_point_summary(phi, window=3):
    """Sample the quotient dimensions along the diagonal.

    dim (R/I) is sampled at (2m-1+i, 2n-1+i) and dim (R/I^2) at
    (3m-1+i, 3n-1+i) for i = 0..window.  The base locus counts as finite
    when the first sequence is constant; its value is then the total
    multiplicity k, and the squared-ideal sequence must be constantly 3k for
    the local-complete-intersection proxy.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    m, n = phi.m, phi.n
    degrees = [(2 * m - 1 + i, 2 * n - 1 + i) for i in range(window + 1)]
    values = [hilbert_dim(phi.a, d) for d in degrees]
    finite, reason = _classify(values)
    k = values[0] if finite else None

    sq_degrees = [(3 * m - 1 + i, 3 * n - 1 + i) for i in range(window + 1)]
    products = phi.products()
    sq_values = [hilbert_dim(products, d) for d in sq_degrees]
    lci = finite and all(v == 3 * k for v in sq_values)

    return BasePointSummary(finite=finite, k=k, lci_proxy=lci,
                            stabilization_window=degrees,
                            hilbert_values=values,
                            hilbert_sq_values=sq_values,
                            reason=reason)


def check_regularity(phi, summary):
    """B4: the window already starts at the stabilized value."""
    return summary.finite and summary.hilbert_values[0] == summary.k


def saturation_member(f, generators, max_power):
    """Does some power of the irrelevant ideal multiply f into <generators>?

    Search N = 0, 1, ..., max_power; at each N test that mu*f lies in the
    ideal at its bidegree for every monomial mu of bidegree (N, N).  N = 0 is
    plain ideal membership.
    """
    for N in range(max_power + 1):
        target = (f.bidegree[0] + N, f.bidegree[1] + N)
        usable = [g for g in generators if bidegree_leq(g.bidegree, target)]
        row_basis = monomial_basis(target)
        if usable:
            solver = SpanSolver(mult_matrix(usable, target))
        else:
            solver = None
        ok = True
        for mu in monomial_basis((N, N)):
            prod = f * f.__class__.monomial(mu)
            if solver is None or not solver.contains(coeff_vector(prod, row_basis)):
                ok = False
                break
        if ok:
            return SaturationResult(member=True, power=N)
    return SaturationResult(member=False, bound_reached=True)


def _abc_scheme_matches(phi, summary):
    """First half of B5: (a0,a1,a2) cut out the same finite scheme as the
    full ideal, certified by a matching stabilized Hilbert value over the
    same window (the triple stabilizes later than the full ideal, so only
    the window tail is required to be constant)."""
    values = [hilbert_dim(phi.a[:3], d) for d in summary.stabilization_window]
    stabilized = len(values) >= 2 and values[-1] == values[-2]
    return stabilized and values[-1] == summary.k, values


def generic_change(phi, seed, bound=10, matrix=None):
    """Recombine (a0..a3) by a seeded random invertible integer matrix.

    Deterministic for a fixed seed.  An explicit matrix overrides the draw.
    """
    if matrix is None:
        rng = random.Random(seed)
        while True:
            entries = [[Fraction(rng.randint(-bound, bound)) for _ in range(4)]
                       for _ in range(4)]
            matrix = RatMatrix(entries, _trusted=True)
            if det_bareiss(matrix) != 0:
                break
    elif det_bareiss(matrix) == 0:
        raise ValueError("coordinate change matrix is singular")
    new_a = []
    for i in range(4):
        f = phi.a[0].scale(matrix[i, 0])
        for j in range(1, 4):
            if matrix[i, j]:
                f = f + phi.a[j].scale(matrix[i, j])
        new_a.append(f)
    return Parametrization(phi.m, phi.n, tuple(new_a)), matrix


def _sat_bound(phi, config):
    if config.sat_bound is not None:
        return config.sat_bound
    return 2 * max(phi.m, phi.n) + 2


def _evaluate_conditions(phi, config):
    verdicts = {}
    witnesses = {}

    verdicts["B1"] = check_independence(phi)
    if not verdicts["B1"]:
        witnesses["B1"] = {"dependency": independence_witness(phi)}

    summary = base_point_summary(phi, config.window)
    k = summary.k
    verdicts["B2"] = summary.finite and k <= phi.mn
    witnesses["B2"] = {
        "window": summary.stabilization_window,
        "values": summary.hilbert_values,
        "k": k,
        "reason": summary.reason,
    }
    verdicts["B3"] = summary.lci_proxy
    witnesses["B3"] = {"squared_values": summary.hilbert_sq_values,
                       "expected": None if k is None else 3 * k}
    verdicts["B4"] = check_regularity(phi, summary)
    witnesses["B4"] = {"value_at_start": summary.hilbert_values[0], "k": k}

    if summary.finite:
        scheme_ok, abc_values = _abc_scheme_matches(phi, summary)
        sat = saturation_member(phi.a[3], phi.a[:3], _sat_bound(phi, config))
        verdicts["B5"] = scheme_ok and sat.member
        witnesses["B5"] = {"abc_values": abc_values, "scheme_match": scheme_ok,
                           "saturation_power": sat.power,
                           "bound_reached": sat.bound_reached}
    else:
        verdicts["B5"] = False
        witnesses["B5"] = {"skipped": "base locus not finite"}

    abc_dim = syz_dim_abc(phi)
    verdicts["B6"] = abc_dim == 0
    witnesses["B6"] = {"dim": abc_dim}

    return verdicts, witnesses, summary


def check_all(phi, config=None):
    """Run B1..B6, retrying with seeded coordinate changes when only the
    position-dependent checks B5/B6 fail.

    A parametrization with no base points at all (k = 0) does not need the
    full battery: the construction goes through as soon as the moving-plane
    space is trivial, so such reports pass regardless of B5/B6.
    """
    config = config or CheckConfig()
    phi_cur, change, change_seed = phi, None, None
    last_report = None
    for attempt in range(config.attempts + 1):
        if attempt:
            change_seed = config.seed + attempt
            phi_cur, change = generic_change(phi, change_seed,
                                             bound=config.coord_bound)
        verdicts, witnesses, summary = _evaluate_conditions(phi_cur, config)
        k = summary.k

        short_path = False
        if verdicts["B1"] and summary.finite and k == 0:
            mp_dim = moving_planes(phi_cur).dim
            witnesses["short_path"] = {"moving_plane_dim": mp_dim}
            short_path = mp_dim == 0

        all_b = all(verdicts[name] for name in ("B1", "B2", "B3", "B4", "B5", "B6"))
        all_passed = all_b or short_path
        failure = None
        if not all_passed:
            failure = next(name for name in ("B1", "B2", "B3", "B4", "B5", "B6")
                           if not verdicts[name])
        report = ConditionReport(verdicts=verdicts, witnesses=witnesses, k=k,
                                 short_path=short_path, all_passed=all_passed,
                                 failure=failure, phi=phi_cur,
                                 coordinate_change=change,
                                 coordinate_seed=change_seed,
                                 summary=summary)
        if all_passed:
            return report
        last_report = report
        recoverable = (all(verdicts[name] for name in ("B1", "B2", "B3", "B4"))
                       and (not verdicts["B5"] or not verdicts["B6"]))
        if not recoverable:
            return report
    return last_report
