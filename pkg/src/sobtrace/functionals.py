"""Trace-norm functionals on finite sample sets.

Two families are computed.  Sequence forms run over consecutive windows of
the data; variational forms take the exact supremum over all strictly
increasing subsequences by exhaustive enumeration (exponential in the number
of points, hence hard-capped).  Homogeneous variants keep only the top-order
term with the plain gap weight.  p = inf is a distinct code path, never a
large-p approximation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .divdiff import divided_difference_rows
from .errors import HypothesisViolationError, InvalidInputError, SizeCapError
from .samples import SampledFunction

#: Exhaustive subsequence enumeration walks 2^n subsets; refuse beyond this.
ENUMERATION_CAP = 20


@dataclass(frozen=True)
class FunctionalReport:
    """A computed functional value plus the conventions it was computed under."""

    m: int
    p: float
    value: float
    kind: str
    effective_order: int


def _check_mp(m: int, p: float) -> None:
    if m < 1:
        raise InvalidInputError(f"m must be a positive integer, got {m}")
    if p != math.inf and not p > 1:
        raise InvalidInputError(f"p must lie in (1, inf], got {p}")


def abs_pow(x: float, p: float) -> float:
    """|x|^p via exp(p*log|x|), with a zero short-circuit (supports fractional p)."""
    if x == 0.0:
        return 0.0
    return math.exp(p * math.log(abs(x)))


def effective_order(s: SampledFunction, m: int) -> int:
    return min(m, len(s) - 1)


def _weight(points, i: int, m: int, n: int) -> float:
    # min(1, x_{i+m} - x_i); the gap counts as +inf once i+m runs past the end
    if i + m > n:
        return 1.0
    return min(1.0, points[i + m] - points[i])


def _windowed_power_sum(points, values, m: int, p: float, top_order: int) -> float:
    """sum_{k<=top_order} sum_i min(1, x_{i+m}-x_i) |D^k f[x_i..x_{i+k}]|^p.

    Deterministic accumulation order: k ascending, i ascending.
    """
    n = len(points) - 1
    rows = divided_difference_rows(points, values, top_order)
    total = 0.0
    for k in range(top_order + 1):
        row = rows[k]
        for i in range(n - k + 1):
            total += _weight(points, i, m, n) * abs_pow(row[i], p)
    return total


def sequence_functional(s: SampledFunction, m: int, p: float) -> FunctionalReport:
    """Weighted consecutive-window functional of the data.

    For finite p this is the 1/p-th power of the double sum over orders
    k = 0..min(m, n) and consecutive windows, each term carrying the weight
    min(1, x_{i+m} - x_i) with weight exactly 1 once i+m exceeds the last
    index.  For p = inf it is the plain maximum of |D^k f| over the same
    windows.
    """
    _check_mp(m, p)
    M = effective_order(s, m)
    if p == math.inf:
        rows = divided_difference_rows(s.points, s.values, M)
        value = 0.0
        for k in range(M + 1):
            for entry in rows[k]:
                value = max(value, abs(entry))
        return FunctionalReport(m, p, value, "sequence", M)
    total = _windowed_power_sum(s.points, s.values, m, p, M)
    return FunctionalReport(m, p, total ** (1.0 / p), "sequence", M)


def _enumeration_guard(s: SampledFunction, m: int, p: float, need_m_plus_1: bool) -> None:
    if len(s) > ENUMERATION_CAP:
        raise SizeCapError(
            f"exhaustive enumeration is capped at {ENUMERATION_CAP} points, got {len(s)}; "
            "use the sequence functional, which is equivalent up to a constant "
            "depending only on m"
        )
    if need_m_plus_1 and p != math.inf and len(s) < m + 1:
        raise HypothesisViolationError(
            f"the variational functional for finite p needs at least m+1 = {m + 1} "
            f"points, got {len(s)}; route small sets through the max-of-differences "
            "small-set functional instead"
        )


def _window_powers(points, values, p: float, orders) -> list[dict]:
    """|D^k f[S]|^p for every (k+1)-point subset S, for each k in ``orders``."""
    n1 = len(points)
    out = []
    for k in orders:
        table: dict[tuple[int, ...], float] = {}
        for combo in itertools.combinations(range(n1), k + 1):
            xs = [points[j] for j in combo]
            ys = [values[j] for j in combo]
            top = divided_difference_rows(xs, ys, k)[k][0]
            table[combo] = abs_pow(top, p)
        out.append(table)
    return out


def variational_functional(s: SampledFunction, m: int, p: float) -> FunctionalReport:
    """Exact supremum of the weighted sum over all increasing subsequences.

    Finite p: every subsequence of length >= m+1 competes with the same
    weighted double sum as the sequence functional, weights and the +inf
    convention applied within the subsequence.  p = inf: supremum of |D^k f|
    over all (k+1)-point subsets for k = 0..m.  Complexity is exponential in
    the number of points (capped).
    """
    _check_mp(m, p)
    _enumeration_guard(s, m, p, need_m_plus_1=True)
    pts, vals = s.points, s.values
    n1 = len(pts)
    M = effective_order(s, m)
    if p == math.inf:
        best = 0.0
        for k in range(M + 1):
            for combo in itertools.combinations(range(n1), k + 1):
                xs = [pts[j] for j in combo]
                ys = [vals[j] for j in combo]
                best = max(best, abs(divided_difference_rows(xs, ys, k)[k][0]))
        return FunctionalReport(m, p, best, "variational", M)
    powers = _window_powers(pts, vals, p, range(m + 1))
    best = 0.0
    for size in range(m + 1, n1 + 1):
        for sub in itertools.combinations(range(n1), size):
            nsub = size - 1
            total = 0.0
            for k in range(m + 1):
                table = powers[k]
                for i in range(nsub - k + 1):
                    if i + m > nsub:
                        w = 1.0
                    else:
                        w = min(1.0, pts[sub[i + m]] - pts[sub[i]])
                    total += w * table[sub[i : i + k + 1]]
            best = max(best, total)
    return FunctionalReport(m, p, best ** (1.0 / p), "variational", M)


def homogeneous_sequence_functional(s: SampledFunction, m: int, p: float) -> FunctionalReport:
    """Top-order consecutive-window functional with plain gap weights:
    (sum_i (x_{i+m} - x_i) |D^m f[x_i..x_{i+m}]|^p)^{1/p}, or the sup of
    |D^m f| over consecutive windows for p = inf."""
    _check_mp(m, p)
    if len(s) < m + 1:
        raise HypothesisViolationError(
            f"need at least m+1 = {m + 1} points for the top-order functional, got {len(s)}"
        )
    pts, vals = s.points, s.values
    n = len(pts) - 1
    row = divided_difference_rows(pts, vals, m)[m]
    if p == math.inf:
        value = max(abs(entry) for entry in row)
        return FunctionalReport(m, p, value, "homogeneous_sequence", m)
    total = 0.0
    for i in range(n - m + 1):
        total += (pts[i + m] - pts[i]) * abs_pow(row[i], p)
    return FunctionalReport(m, p, total ** (1.0 / p), "homogeneous_sequence", m)


def homogeneous_variational_functional(s: SampledFunction, m: int, p: float) -> FunctionalReport:
    """Supremum of the top-order weighted sum over increasing subsequences
    (finite p), or of |D^m f| over all (m+1)-point subsets (p = inf)."""
    _check_mp(m, p)
    if len(s) < m + 1:
        raise HypothesisViolationError(
            f"need at least m+1 = {m + 1} points, got {len(s)}"
        )
    _enumeration_guard(s, m, p, need_m_plus_1=True)
    pts, vals = s.points, s.values
    n1 = len(pts)
    if p == math.inf:
        best = 0.0
        for combo in itertools.combinations(range(n1), m + 1):
            xs = [pts[j] for j in combo]
            ys = [vals[j] for j in combo]
            best = max(best, abs(divided_difference_rows(xs, ys, m)[m][0]))
        return FunctionalReport(m, p, best, "homogeneous_variational", m)
    (powers,) = _window_powers(pts, vals, p, [m])
    best = 0.0
    for size in range(m + 1, n1 + 1):
        for sub in itertools.combinations(range(n1), size):
            nsub = size - 1
            total = 0.0
            for i in range(nsub - m + 1):
                total += (pts[sub[i + m]] - pts[sub[i]]) * powers[sub[i : i + m + 1]]
            best = max(best, total)
    return FunctionalReport(m, p, best ** (1.0 / p), "homogeneous_variational", m)


def small_set_functional(s: SampledFunction, m: int, p: float) -> FunctionalReport:
    """Max of |D^k f| over consecutive windows, for sets of at most m points.

    On such sets all the trace functionals collapse, up to constants depending
    only on m, to this single maximum, so it serves as the equivalence-class
    representative.  The value does not depend on p.
    """
    _check_mp(m, p)
    n = len(s) - 1
    if len(s) > m:
        raise InvalidInputError(
            f"the small-set functional applies to at most m = {m} points, got {len(s)}"
        )
    rows = divided_difference_rows(s.points, s.values, n)
    value = 0.0
    for k in range(n + 1):
        for entry in rows[k]:
            value = max(value, abs(entry))
    return FunctionalReport(m, p, value, "small_set_max", n)


def pad_small_set(s: SampledFunction, m: int) -> SampledFunction:
    """Grow a set of n+1 <= m points to exactly m+1 by appending zero samples.

    The new coordinates continue past the right end with spacing 2:
    x_k = x_n + 2(k - n) for k = n+1..m, each carrying the value 0.
    """
    if m < 1:
        raise InvalidInputError(f"m must be a positive integer, got {m}")
    n = len(s) - 1
    if len(s) > m:
        raise InvalidInputError(
            f"padding applies to at most m = {m} points, got {len(s)}"
        )
    extra_pts = tuple(s.points[n] + 2.0 * (k - n) for k in range(n + 1, m + 1))
    extra_vals = (0.0,) * (m - n)
    return SampledFunction(s.points + extra_pts, s.values + extra_vals)
