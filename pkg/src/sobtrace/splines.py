"""L^p norms of piecewise polynomials and minimal-energy interpolating splines.

Quadrature policy: |q|^p with an even integer p is a polynomial, so a single
Gauss-Legendre rule of sufficient order is exact per piece.  Odd integer p is
handled exactly as well by splitting each piece at the real roots of q (the
sign is then constant per subinterval).  Fractional p falls back to adaptive
Gauss panels after the same root splitting.  p = inf is an exact per-piece
critical-point scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from .errors import InvalidInputError, NonintegrableError, NumericalFailureError
from .piecewise import PiecewisePolynomial, polynomial_derivative, polynomial_eval
from .samples import SampledFunction

_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GAUSS_CACHE:
        _GAUSS_CACHE[n] = leggauss(n)
    return _GAUSS_CACHE[n]


@dataclass(frozen=True)
class NormReport:
    """Per-derivative L^p norms of an extension F.

    ``w_norm`` is the sum of ``lp_norms``; ``l_homog`` is the top-order entry
    alone (the homogeneous seminorm).
    """

    lp_norms: tuple[float, ...]
    w_norm: float
    l_homog: float


def _trimmed(c) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return np.zeros(0)
    return c[: nz[-1] + 1]


def _real_roots_inside(coeffs, lo: float, hi: float) -> list[float]:
    c = _trimmed(coeffs)
    if len(c) <= 1:
        return []
    r = np.roots(c[::-1])
    out = []
    for z in r:
        if abs(z.imag) <= 1e-9 * (1.0 + abs(z.real)) and lo < z.real < hi:
            out.append(float(z.real))
    out.sort()
    merged: list[float] = []
    for x in out:
        if not merged or x - merged[-1] > 1e-13 * (hi - lo):
            merged.append(x)
    return merged


def _gl_power_integral(coeffs, a: float, b: float, p: int) -> float:
    """Exact integral of q(t)^p over [a, b] for integer p >= 1."""
    deg = max(len(_trimmed(coeffs)) - 1, 0)
    n = max(1, math.ceil((deg * p + 1) / 2))
    nodes, weights = _gauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = polynomial_eval(coeffs, mid + half * nodes)
    return half * float(np.dot(weights, vals**p))


def _gl_abs_pow(coeffs, a: float, b: float, p: float, n: int = 16) -> float:
    nodes, weights = _gauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = np.abs(polynomial_eval(coeffs, mid + half * nodes))
    return half * float(np.dot(weights, vals**p))


def _adaptive_abs_pow(coeffs, a: float, b: float, p: float, atol: float, depth: int = 0) -> float:
    # absolute budget that halves per split: near a root of q the panel
    # integral of |q|^p shrinks like h^{p+1} >> the budget's factor 2, so the
    # recursion grades into the root and terminates; a per-panel relative
    # test would never converge there (the Gauss error of |t|^p is
    # scale-invariant)
    whole = _gl_abs_pow(coeffs, a, b, p)
    mid = 0.5 * (a + b)
    split = _gl_abs_pow(coeffs, a, mid, p) + _gl_abs_pow(coeffs, mid, b, p)
    if abs(split - whole) <= atol or depth >= 48:
        return split
    return _adaptive_abs_pow(coeffs, a, mid, p, atol / 2, depth + 1) + _adaptive_abs_pow(
        coeffs, mid, b, p, atol / 2, depth + 1
    )


def _piece_abs_pow_integral(coeffs, h: float, p: float, quad_tol: float) -> float:
    c = _trimmed(coeffs)
    if len(c) == 0:
        return 0.0
    if p == int(p):
        q = int(p)
        if q % 2 == 0:
            return _gl_power_integral(c, 0.0, h, q)
        cuts = [0.0] + _real_roots_inside(c, 0.0, h) + [h]
        total = 0.0
        for a, b in zip(cuts, cuts[1:]):
            total += abs(_gl_power_integral(c, a, b, q))
        return total
    cuts = [0.0] + _real_roots_inside(c, 0.0, h) + [h]
    rough = sum(_gl_abs_pow(c, a, b, p) for a, b in zip(cuts, cuts[1:]))
    atol = quad_tol * (abs(rough) + 1e-300)
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        total += _adaptive_abs_pow(c, a, b, p, atol)
    return total


def _piece_sup(coeffs, h: float) -> float:
    c = _trimmed(coeffs)
    if len(c) == 0:
        return 0.0
    candidates = [0.0, h] + _real_roots_inside(polynomial_derivative(c), 0.0, h)
    return max(abs(polynomial_eval(c, t)) for t in candidates)


def lp_norm(F: PiecewisePolynomial, p: float, quad_tol: float = 1e-10) -> float:
    """||F||_{L^p} over the whole line.

    For finite p the tails must vanish identically (a nonzero polynomial tail
    is not integrable); for p = inf a constant tail contributes its modulus
    and a non-constant one makes the supremum infinite.
    """
    if p != math.inf and p < 1:
        raise InvalidInputError(f"p must be in [1, inf], got {p}")
    widths = np.diff(F.breakpoints)
    if p == math.inf:
        best = 0.0
        for c, h in zip(F.coefficients, widths):
            best = max(best, _piece_sup(c, float(h)))
        for tail in (F.left_tail, F.right_tail):
            t = _trimmed(tail)
            if len(t) > 1:
                return math.inf
            if len(t) == 1:
                best = max(best, abs(float(t[0])))
        return best
    if not F.has_zero_tails():
        raise NonintegrableError(
            "finite-p norm requires identically zero tails; differentiate away "
            "polynomial tails first or restrict to a compactly supported function"
        )
    total = 0.0
    for c, h in zip(F.coefficients, widths):
        total += _piece_abs_pow_integral(c, float(h), p, quad_tol)
    return total ** (1.0 / p)


def sobolev_norm(F: PiecewisePolynomial, m: int, p: float, quad_tol: float = 1e-10) -> NormReport:
    """Norms of F and its derivatives up to order m, plus their sum."""
    if m < 0:
        raise InvalidInputError("m must be nonnegative")
    norms = []
    current = F
    for k in range(m + 1):
        norms.append(lp_norm(current, p, quad_tol))
        if k < m:
            current = current.differentiate()
    lp = tuple(norms)
    return NormReport(lp, sum(lp), lp[-1])


# --------------------------------------------------------------------------
# minimal-energy interpolating splines


def _perm(d: int, ell: int) -> float:
    return float(math.perm(d, ell))


def _solve_sparse(A: lil_matrix, b: np.ndarray, n_pieces: int, width: int) -> np.ndarray:
    sol = spsolve(A.tocsc(), b)
    if not np.all(np.isfinite(sol)):
        raise NumericalFailureError("spline system is singular or badly scaled")
    return np.asarray(sol, dtype=float).reshape(n_pieces, width)


def _natural_system(t: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    """Coefficients (pieces x 2m) of the minimal ∫|F^(m)|^2 interpolant on
    knots ``t``: degree 2m-1 pieces, C^{2m-2} joins, vanishing derivatives of
    orders m..2m-2 at both extreme knots."""
    n = len(t) - 1
    w = 2 * m
    size = w * n
    A = lil_matrix((size, size))
    b = np.zeros(size)
    h = np.diff(t)
    row = 0
    for j in range(n):
        A[row, j * w] = 1.0
        b[row] = y[j]
        row += 1
        powers = h[j] ** np.arange(w)
        for d in range(w):
            A[row, j * w + d] = powers[d]
        b[row] = y[j + 1]
        row += 1
    for j in range(n - 1):
        for ell in range(1, 2 * m - 1):
            for d in range(ell, w):
                A[row, j * w + d] = _perm(d, ell) * h[j] ** (d - ell)
            A[row, (j + 1) * w + ell] = -_perm(ell, ell)
            row += 1
    for ell in range(m, 2 * m - 1):
        A[row, ell] = 1.0
        row += 1
    for ell in range(m, 2 * m - 1):
        for d in range(ell, w):
            A[row, (n - 1) * w + d] = _perm(d, ell) * h[n - 1] ** (d - ell)
        row += 1
    assert row == size
    return _solve_sparse(A, b, n, w)


def natural_spline_min_energy(s: SampledFunction, m: int) -> tuple[PiecewisePolynomial, float]:
    """Interpolant minimizing ∫ |F^(m)|^2, with its exact energy.

    The minimizer is a spline of degree 2m-1 with C^{2m-2} interior joins and
    polynomial tails of degree <= m-1 (the energy density vanishes outside the
    data).  With fewer than m+1 samples the minimum is 0, attained by the
    interpolating polynomial itself; that degenerate case is returned as such.
    Knots are pre-scaled to unit mean gap before the banded solve.
    """
    if m < 1:
        raise InvalidInputError("m must be a positive integer")
    if len(s) <= m:
        from .divdiff import lagrange_polynomial  # deferred: avoids an import cycle

        return lagrange_polynomial(s), 0.0
    pts = np.asarray(s.points)
    vals = np.asarray(s.values)
    g = float(pts[-1] - pts[0]) / (len(pts) - 1)
    scaled = (pts - pts[0]) / g
    coef = _natural_system(scaled, vals, m)
    coef = coef / g ** np.arange(2 * m)
    left_tail = coef[0][:m]
    h_last = float(pts[-1] - pts[-2])
    right_tail = np.array(
        [_poly_deriv_at(coef[-1], h_last, ell) / math.factorial(ell) for ell in range(m)]
    )
    F = PiecewisePolynomial(pts, list(coef), left_tail, right_tail)
    deriv = F
    for _ in range(m):
        deriv = deriv.differentiate()
    energy = lp_norm(deriv, 2.0) ** 2
    return F, energy


def _poly_deriv_at(coeffs, t: float, order: int) -> float:
    c = np.asarray(coeffs, dtype=float)
    for _ in range(order):
        c = polynomial_derivative(c)
    return float(polynomial_eval(c, t))


def anchored_min_energy_spline(
    points, values, m: int, edge_left: float, edge_right: float
) -> PiecewisePolynomial:
    """Minimal ∫|F^(m)|^2 interpolant clamped to zero jets at two edge knots.

    The result vanishes identically outside [edge_left, edge_right]: the edge
    knots carry m zero conditions each (value and derivatives up to m-1),
    realized as interpolation rows rather than a constrained optimization, so
    a single sparse solve produces the spline.  Interior joins are C^{2m-2};
    the edge joins are C^{m-1} against the zero tails.

    An interior knot that coincides with an edge must carry the value 0 and is
    absorbed into the edge conditions.
    """
    if m < 1:
        raise InvalidInputError("m must be a positive integer")
    pts = [float(x) for x in points]
    vals = [float(v) for v in values]
    if not edge_left < pts[0] + 1e-12 or not edge_right > pts[-1] - 1e-12:
        raise InvalidInputError("edges must bracket the data")
    interior: list[tuple[float, float]] = []
    for x, v in zip(pts, vals):
        near_left = abs(x - edge_left) <= 1e-9 * (1.0 + abs(edge_left))
        near_right = abs(x - edge_right) <= 1e-9 * (1.0 + abs(edge_right))
        if near_left or near_right:
            if v != 0.0:
                raise InvalidInputError("a knot on the window edge must carry the value 0")
            continue
        interior.append((x, v))
    knots = np.array([edge_left] + [x for x, _ in interior] + [edge_right])
    yvals = np.array([v for _, v in interior])
    g = float(knots[-1] - knots[0]) / (len(knots) - 1)
    scaled = (knots - knots[0]) / g
    coef = _anchored_system(scaled, yvals, m)
    coef = coef / g ** np.arange(2 * m)
    return PiecewisePolynomial(knots, list(coef))


def _anchored_system(t: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    n = len(t) - 1  # pieces; interior knots carry the data
    w = 2 * m
    size = w * n
    A = lil_matrix((size, size))
    b = np.zeros(size)
    h = np.diff(t)
    row = 0
    for ell in range(m):  # zero jet at the left edge
        A[row, ell] = _perm(ell, ell)
        row += 1
    for ell in range(m):  # zero jet at the right edge
        for d in range(ell, w):
            A[row, (n - 1) * w + d] = _perm(d, ell) * h[n - 1] ** (d - ell)
        row += 1
    for q in range(1, n):  # data knot between piece q-1 and piece q
        for d in range(w):
            A[row, (q - 1) * w + d] = h[q - 1] ** d
        b[row] = y[q - 1]
        row += 1
        A[row, q * w] = 1.0
        b[row] = y[q - 1]
        row += 1
        for ell in range(1, 2 * m - 1):
            for d in range(ell, w):
                A[row, (q - 1) * w + d] = _perm(d, ell) * h[q - 1] ** (d - ell)
            A[row, q * w + ell] = -_perm(ell, ell)
            row += 1
    assert row == size
    return _solve_sparse(A, b, n, w)
