import math

import numpy as np
import pytest

from sobtrace import (
    InvalidInputError,
    NonintegrableError,
    PiecewisePolynomial,
    SampledFunction,
    anchored_min_energy_spline,
    homogeneous_sequence_functional,
    lagrange_polynomial,
    lp_norm,
    natural_spline_min_energy,
    sobolev_norm,
)
from conftest import make_samples, polynomial_samples

INF = math.inf


def linear_piece():
    return PiecewisePolynomial([0.0, 1.0], [[0.0, 1.0]])


# ---------------------------------------------------------------- lp norms


def test_lp2_of_x():
    assert lp_norm(linear_piece(), 2.0) == pytest.approx(math.sqrt(1 / 3), rel=1e-13)


def test_lp_zero_function():
    Z = PiecewisePolynomial([0.0, 1.0], [[0.0]])
    for p in (1.5, 2.0, 3.0, INF):
        assert lp_norm(Z, p) == 0.0


def test_sup_norm_critical_point():
    # x(1-x) on [0,1]: maximum 0.25 at the interior critical point
    F = PiecewisePolynomial([0.0, 1.0], [[0.0, 1.0, -1.0]])
    assert lp_norm(F, INF) == pytest.approx(0.25, rel=1e-12)


def test_gauss_exactness_monomials(rng):
    # closed form: integral of t^d over [0, h] is h^(d+1)/(d+1)
    for d in range(8):
        h = float(rng.uniform(0.3, 2.5))
        coeffs = [0.0] * d + [1.0]
        F = PiecewisePolynomial([0.0, h], [coeffs])
        exact = math.sqrt(h ** (2 * d + 1) / (2 * d + 1))
        assert lp_norm(F, 2.0) == pytest.approx(exact, rel=1e-12)


def test_odd_p_with_sign_change():
    # |x - 0.5|^3 on [0,1] integrates to 2 * 0.5^4 / 4
    F = PiecewisePolynomial([0.0, 1.0], [[-0.5, 1.0]])
    assert lp_norm(F, 3.0) == pytest.approx((2 * 0.5**4 / 4) ** (1 / 3), rel=1e-12)


def test_fractional_p():
    # integral of x^1.5 over [0,1] = 0.4
    assert lp_norm(linear_piece(), 1.5) == pytest.approx(0.4 ** (1 / 1.5), rel=1e-9)


def test_fractional_p_across_root():
    # local coefficients -1 + t on [-1, 1] represent q(x) = x, zero at 0
    F = PiecewisePolynomial([-1.0, 1.0], [[-1.0, 1.0]])
    exact = (2 / 2.5) ** (1 / 1.5)
    assert lp_norm(F, 1.5) == pytest.approx(exact, rel=1e-9)


def test_nonintegrable_tails_raise():
    F = PiecewisePolynomial([0.0, 1.0], [[1.0]], left_tail=[1.0], right_tail=[1.0])
    with pytest.raises(NonintegrableError):
        lp_norm(F, 2.0)


def test_sup_norm_with_tails():
    const_tail = PiecewisePolynomial([0.0, 1.0], [[0.5]], left_tail=[2.0], right_tail=[0.0])
    assert lp_norm(const_tail, INF) == 2.0
    growing = PiecewisePolynomial([0.0, 1.0], [[0.5]], left_tail=[0.0, 1.0], right_tail=[0.0])
    assert lp_norm(growing, INF) == INF


def test_lp_rejects_bad_p():
    with pytest.raises(InvalidInputError):
        lp_norm(linear_piece(), 0.5)


def test_lp_triangle_inequality_and_scaling(rng):
    for p in (1.5, 2.0, 3.0):
        for _ in range(5):
            bp_f = np.sort(rng.uniform(0, 4, 3))
            bp_g = np.sort(rng.uniform(1, 5, 3))
            if np.diff(bp_f).min() < 0.1 or np.diff(bp_g).min() < 0.1:
                continue
            F = PiecewisePolynomial(bp_f, [rng.standard_normal(3) for _ in range(2)])
            G = PiecewisePolynomial(bp_g, [rng.standard_normal(3) for _ in range(2)])
            nf, ng, nfg = lp_norm(F, p), lp_norm(G, p), lp_norm(F + G, p)
            assert nfg <= nf + ng + 1e-9 * (nf + ng)
            assert lp_norm(-2.5 * F, p) == pytest.approx(2.5 * nf, rel=1e-9)


def test_sobolev_norm_of_x():
    rep = sobolev_norm(linear_piece(), 1, 2.0)
    assert rep.lp_norms[0] == pytest.approx(math.sqrt(1 / 3), rel=1e-12)
    assert rep.lp_norms[1] == pytest.approx(1.0, rel=1e-12)
    assert rep.w_norm == sum(rep.lp_norms)
    assert rep.l_homog == rep.lp_norms[-1]


def test_sobolev_zero():
    Z = PiecewisePolynomial([0.0, 2.0], [[0.0, 0.0]])
    rep = sobolev_norm(Z, 2, 2.0)
    assert rep.w_norm == 0.0


def test_w_norm_dominates_homogeneous(rng):
    s = make_samples(rng, 5)
    F, _ = natural_spline_min_energy(s, 2)
    # the natural spline has polynomial tails; compare on a clipped copy
    rep = sobolev_norm(_clip_to_window(F), 2, 2.0)
    assert rep.w_norm >= rep.l_homog


def _clip_to_window(F):
    return PiecewisePolynomial(F.breakpoints, list(F.coefficients))


# --------------------------------------------------------- natural splines


def test_natural_m1_energy_closed_form():
    s = SampledFunction((0.0, 1.0, 3.0), (0.0, 1.0, 1.0))
    F, energy = natural_spline_min_energy(s, 1)
    assert energy == pytest.approx(1.0, rel=1e-12)
    for x, v in zip(s.points, s.values):
        assert F(x) == pytest.approx(v, abs=1e-12)


def test_natural_reproduces_low_degree(rng):
    for m in (1, 2, 3):
        s, coeffs = polynomial_samples(rng, m - 1, m + 3)
        F, energy = natural_spline_min_energy(s, m)
        scale = 1 + max(abs(v) for v in s.values)
        assert energy <= 1e-16 * scale**2
        xs = np.linspace(s.points[0], s.points[-1], 50)
        expected = np.polynomial.polynomial.polyval(xs, coeffs)
        assert F(xs) == pytest.approx(expected, rel=1e-7, abs=1e-8 * scale)


def test_degenerate_small_set_returns_polynomial(rng):
    s = make_samples(rng, 2)
    F, energy = natural_spline_min_energy(s, 3)
    assert energy == 0.0
    for x, v in zip(s.points, s.values):
        assert F(x) == pytest.approx(v, abs=1e-10)


def test_natural_m1_matches_functional(rng):
    for _ in range(20):
        size = int(rng.integers(2, 9))
        s = make_samples(rng, size, span=5.0)
        _, energy = natural_spline_min_energy(s, 1)
        h = homogeneous_sequence_functional(s, 1, 2.0).value
        assert energy == pytest.approx(h * h, rel=1e-10)


def test_energy_quadratic_scaling(rng):
    s = make_samples(rng, 6)
    _, e1 = natural_spline_min_energy(s, 2)
    _, e4 = natural_spline_min_energy(s.scaled_values(2.0), 2)
    assert e4 == pytest.approx(4.0 * e1, rel=1e-9)


def test_energy_triangle_inequality(rng):
    s = make_samples(rng, 6)
    g_vals = tuple(float(v) for v in rng.standard_normal(6))
    g = SampledFunction(s.points, g_vals)
    fg = SampledFunction(s.points, tuple(a + b for a, b in zip(s.values, g_vals)))
    _, ef = natural_spline_min_energy(s, 2)
    _, eg = natural_spline_min_energy(g, 2)
    _, efg = natural_spline_min_energy(fg, 2)
    assert math.sqrt(efg) <= math.sqrt(ef) + math.sqrt(eg) + 1e-9


def _bump_in_gap(a, b, m):
    """C^{m-1} bump ((x-a)(b-x))^m supported inside (a, b)."""
    width = b - a
    coeffs = np.zeros(2 * m + 1)
    for i in range(m + 1):
        coeffs[m + i] = math.comb(m, i) * width ** (m - i) * (-1.0) ** i
    return PiecewisePolynomial([a, b], [coeffs])


def test_minimizer_stationarity_under_bumps(rng):
    for m in (1, 2):
        s = make_samples(rng, 6, span=8.0)
        F, energy = natural_spline_min_energy(s, m)
        for _ in range(20):
            j = int(rng.integers(0, len(s) - 1))
            x0, x1 = s.points[j], s.points[j + 1]
            pad = 0.2 * (x1 - x0)
            a = float(rng.uniform(x0 + 0.1 * pad, x0 + pad))
            b = float(rng.uniform(x1 - pad, x1 - 0.1 * pad))
            if b <= a:
                continue
            amp = float(rng.uniform(-2.0, 2.0))
            bump = amp * _bump_in_gap(a, b, m)
            for x, v in zip(s.points, s.values):
                assert bump(x) == 0.0
            perturbed = F + bump
            deriv = perturbed
            for _ in range(m):
                deriv = deriv.differentiate()
            new_energy = lp_norm(deriv, 2.0) ** 2
            assert new_energy >= energy * (1 - 1e-8) - 1e-12


# --------------------------------------------------------- anchored solves


def test_anchored_interpolates_and_clamps(rng):
    pts = (0.0, 1.0, 2.5, 4.0)
    vals = (1.0, -1.0, 0.5, 2.0)
    for m in (1, 2, 3):
        F = anchored_min_energy_spline(pts, vals, m, -6.0, 10.0)
        for x, v in zip(pts, vals):
            assert F(x) == pytest.approx(v, abs=1e-9)
        assert F(-6.0) == pytest.approx(0.0, abs=1e-9)
        assert F(-7.0) == 0.0
        assert F(11.0) == 0.0
        assert F.smoothness_order(1e-7) >= m - 1


def test_anchored_interior_extra_smoothness():
    pts = (0.0, 1.0, 2.0)
    vals = (1.0, -1.0, 0.5)
    m = 2
    F = anchored_min_energy_spline(pts, vals, m, -5.0, 7.0)
    dF = F.differentiate()
    ddF = dF.differentiate()
    # jumps of the first 2m-2 = 2 derivatives vanish at the data knots
    for knot in pts:
        eps = 1e-7
        for G in (dF, ddF):
            assert G(knot + eps) == pytest.approx(G(knot - eps), rel=1e-4, abs=1e-4)


def test_anchored_coincident_edge_knot():
    # a zero-valued knot exactly on the edge is absorbed into the clamp
    F = anchored_min_energy_spline((-6.0, 0.0, 1.0), (0.0, 1.0, 2.0), 2, -6.0, 7.0)
    assert F(0.0) == pytest.approx(1.0, abs=1e-9)
    assert F(-6.5) == 0.0
    with pytest.raises(InvalidInputError):
        anchored_min_energy_spline((-6.0, 0.0), (1.0, 1.0), 2, -6.0, 6.0)


def test_lagrange_degenerate_tail_integrity(rng):
    # degenerate natural spline inherits the global polynomial's tails
    s = make_samples(rng, 3)
    L = lagrange_polynomial(s)
    xs = np.linspace(s.points[0] - 2, s.points[-1] + 2, 25)
    F, _ = natural_spline_min_energy(s, 4)
    assert F(xs) == pytest.approx(L(xs), rel=1e-9, abs=1e-9)
