import math

import numpy as np
import pytest

from sobtrace import (
    ExtensionConfig,
    InvalidInputError,
    SampledFunction,
    build_gap_lattice,
    extend,
    necessity_bound_factor,
    support_pad,
    verify_necessity,
    zero_extend,
)
from conftest import make_samples


def lattice_invariants(points, lattice, pad):
    pts = list(points)
    G = lattice.lattice_points
    # interior long gaps subdivide into widths in [2, 3]
    for a, b in zip(pts, pts[1:]):
        width = b - a
        inside = [y for y in G if a < y < b]
        if width > 4:
            n_j = math.floor(width / 2)
            ell = width / n_j
            assert 2.0 <= ell <= 3.0
            assert len(inside) == n_j - 1
            expected = [a + ell * n for n in range(1, n_j)]
            assert inside == pytest.approx(expected, abs=1e-12)
        else:
            assert inside == []
    # separation from the data and among lattice points
    for y in G:
        assert min(abs(y - x) for x in pts) >= 2.0 - 1e-12
    for u, v in zip(G, G[1:]):
        assert v - u >= 2.0 - 1e-12
    # window coverage within 2
    lo, hi = pts[0] - pad, pts[-1] + pad
    merged = sorted([*pts, *G])
    assert merged[0] - lo <= 2.0 + 1e-12
    assert hi - merged[-1] <= 2.0 + 1e-12
    for u, v in zip(merged, merged[1:]):
        assert v - u <= 4.0 + 1e-12


def test_lattice_example_two_points():
    cfg = ExtensionConfig(m=1)
    lat = build_gap_lattice((0.0, 10.0), cfg)
    interior = [y for y in lat.lattice_points if 0 < y < 10]
    assert interior == [2.0, 4.0, 6.0, 8.0]


def test_lattice_short_gap_empty():
    cfg = ExtensionConfig(m=1)
    lat = build_gap_lattice((0.0, 3.0), cfg)
    assert [y for y in lat.lattice_points if 0 < y < 3] == []
    assert (0.0, 3.0) not in lat.long_gaps


def test_lattice_invariants_random(rng):
    for _ in range(100):
        m = int(rng.integers(1, 4))
        cfg = ExtensionConfig(m=m)
        size = int(rng.integers(1, 9))
        if rng.random() < 0.5:
            pts = np.sort(rng.uniform(0, 40, size))
        else:  # clustered
            centers = rng.uniform(0, 60, max(1, size // 3 + 1))
            pts = np.sort(rng.choice(centers, size) + rng.uniform(0, 0.5, size))
        pts = np.unique(pts)
        if len(pts) > 1 and np.diff(pts).min() < 1e-6:
            continue
        lat = build_gap_lattice(tuple(pts), cfg)
        lattice_invariants(pts, lat, cfg.window_pad)


def test_zero_extend_example():
    cfg = ExtensionConfig(m=1, window_pad=9.0)
    s = SampledFunction((0.0, 10.0), (1.0, 1.0))
    lat = build_gap_lattice(s.points, cfg)
    merged = zero_extend(s, lat)
    assert len(merged) == len(s) + len(lat.lattice_points)
    inner = {x: v for x, v in zip(merged.points, merged.values) if 0 <= x <= 10}
    assert inner == {0.0: 1.0, 2.0: 0.0, 4.0: 0.0, 6.0: 0.0, 8.0: 0.0, 10.0: 1.0}


def test_zero_extend_zero_data(rng):
    s = SampledFunction((0.0, 7.0), (0.0, 0.0))
    lat = build_gap_lattice(s.points, ExtensionConfig(m=2))
    merged = zero_extend(s, lat)
    assert all(v == 0.0 for v in merged.values)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        ExtensionConfig(m=0)
    with pytest.raises(InvalidInputError):
        ExtensionConfig(m=2, backend="nope")
    with pytest.raises(InvalidInputError):
        ExtensionConfig(m=2, window_pad=5.0)
    assert ExtensionConfig(m=2).window_pad == support_pad(2) == 12.0


@pytest.mark.parametrize("backend", ["hermite", "natural2"])
def test_extension_contract_random(rng, backend):
    for _ in range(8):
        m = int(rng.integers(1, 4))
        size = int(rng.integers(1, 9))
        s = make_samples(rng, size, span=12.0)
        cfg = ExtensionConfig(m=m, backend=backend)
        F = extend(s, cfg)
        scale = 1 + max(abs(v) for v in s.values)
        resid = max(abs(F(x) - v) for x, v in zip(s.points, s.values))
        assert resid <= 1e-9 * scale
        assert F.smoothness_order(cfg.smoothness_tol) >= m - 1
        assert F.degree <= 2 * m - 1
        lo = s.points[0] - cfg.window_pad
        hi = s.points[-1] + cfg.window_pad
        pad_geom = 2.0 * (m - size) if size <= m else 0.0  # padding continues right
        for x in (lo - 1.0, hi + pad_geom + 1.0, lo - 50.0, hi + pad_geom + 50.0):
            assert F(x) == 0.0


def bounded_gap_poly_samples(rng, m, size, max_gap=4.0):
    """Polynomial samples whose interior gaps all stay within ``max_gap``."""
    coeffs = rng.standard_normal(m)
    while True:
        pts = np.sort(rng.uniform(0.0, 2.0 * size, size))
        gaps = np.diff(pts)
        if len(pts) == 1 or (gaps.min() >= 0.3 and gaps.max() <= max_gap):
            break
    vals = np.polynomial.polynomial.polyval(pts, coeffs)
    return SampledFunction(tuple(pts), tuple(vals)), coeffs


def test_polynomial_reproduction_hermite(rng):
    for m in (1, 2, 3, 4):
        s, coeffs = bounded_gap_poly_samples(rng, m, m + 3)
        F = extend(s, ExtensionConfig(m=m, backend="hermite"))
        xs = np.linspace(s.points[0], s.points[-1], 200)
        expected = np.polynomial.polynomial.polyval(xs, coeffs)
        scale = 1 + np.max(np.abs(expected))
        assert np.max(np.abs(F(xs) - expected)) <= 1e-8 * scale


def test_zero_data_zero_extension(rng):
    for backend in ("hermite", "natural2"):
        s = SampledFunction((0.0, 1.0, 5.0), (0.0, 0.0, 0.0))
        F = extend(s, ExtensionConfig(m=2, backend=backend))
        xs = np.linspace(-15.0, 20.0, 100)
        assert np.max(np.abs(F(xs))) <= 1e-12


@pytest.mark.parametrize("backend", ["hermite", "natural2"])
def test_linearity(rng, backend):
    m = 2
    pts = tuple(sorted(rng.uniform(0, 10, 6)))
    f_vals = rng.standard_normal(6)
    g_vals = rng.standard_normal(6)
    alpha, beta = 1.7, -0.6
    cfg = ExtensionConfig(m=m, backend=backend)
    Ff = extend(SampledFunction(pts, tuple(f_vals)), cfg)
    Fg = extend(SampledFunction(pts, tuple(g_vals)), cfg)
    Fc = extend(SampledFunction(pts, tuple(alpha * f_vals + beta * g_vals)), cfg)
    xs = np.linspace(pts[0] - cfg.window_pad, pts[-1] + cfg.window_pad, 200)
    combo = alpha * Ff(xs) + beta * Fg(xs)
    scale = 1 + np.max(np.abs(combo))
    assert np.max(np.abs(Fc(xs) - combo)) <= 1e-8 * scale


def test_natural2_interior_smoothness(rng):
    m = 2
    s = make_samples(rng, 5, span=6.0)
    F = extend(s, ExtensionConfig(m=m, backend="natural2"))
    dF = F.differentiate()
    ddF = dF.differentiate()
    eps = 1e-7
    for knot in F.breakpoints[1:-1]:
        # merged data+lattice knots keep 2m-2 = 2 continuous derivatives
        for G in (dF, ddF):
            left, right = G(float(knot) - eps), G(float(knot) + eps)
            assert abs(left - right) <= 1e-4 * (1 + max(abs(left), abs(right)))


def test_small_sets_are_padded_and_extended(rng):
    for backend in ("hermite", "natural2"):
        for m in (2, 3):
            s = make_samples(rng, 1)
            F = extend(s, ExtensionConfig(m=m, backend=backend))
            assert F(s.points[0]) == pytest.approx(s.values[0], abs=1e-9)


def test_merged_set_energy_identity(rng):
    # the m=1 closed-form identity survives zero fill onto the lattice
    from sobtrace import homogeneous_sequence_functional, natural_spline_min_energy

    s = make_samples(rng, 4, span=20.0)
    cfg = ExtensionConfig(m=1)
    merged = zero_extend(s, build_gap_lattice(s.points, cfg))
    _, energy = natural_spline_min_energy(merged, 1)
    h = homogeneous_sequence_functional(merged, 1, 2.0).value
    assert energy == pytest.approx(h * h, rel=1e-10)


def test_verify_necessity_zero_data():
    s = SampledFunction((0.0, 1.0, 2.0), (0.0, 0.0, 0.0))
    F = extend(s, ExtensionConfig(m=1))
    rep = verify_necessity(s, F, 1, 2.0)
    assert rep.passed and rep.ratio == 0.0


def test_verify_necessity_hand_instance():
    s = SampledFunction((0.0, 1.0, 2.0), (0.0, 1.0, 4.0))
    F = extend(s, ExtensionConfig(m=1, backend="natural2"))
    rep = verify_necessity(s, F, 1, 2.0)
    assert rep.passed
    assert 0 < rep.ratio <= rep.bound_factor
    assert rep.functional_kind == "variational"


def test_verify_necessity_rejects_non_interpolant():
    s = SampledFunction((0.0, 1.0, 2.0), (0.0, 1.0, 4.0))
    other = SampledFunction((0.0, 1.0, 2.0), (5.0, 1.0, 4.0))
    F = extend(other, ExtensionConfig(m=1))
    with pytest.raises(InvalidInputError):
        verify_necessity(s, F, 1, 2.0)


def test_necessity_bound_factor_values():
    assert necessity_bound_factor(1, 2.0) == pytest.approx(2 * math.sqrt(6))
    assert necessity_bound_factor(2, math.inf) == 1.0


def test_verify_necessity_beyond_cap_uses_sequence_form(rng):
    # 22 points: exhaustive enumeration is off the table; the consecutive
    # window functional takes over
    s = make_samples(rng, 22, span=30.0)
    F = extend(s, ExtensionConfig(m=1))
    rep = verify_necessity(s, F, 1, 2.0)
    assert rep.passed
    assert rep.functional_kind == "sequence"


@pytest.mark.parametrize("p", [1.5, 2.0, 3.0, math.inf])
def test_necessity_random(rng, p):
    for backend in ("hermite", "natural2"):
        m = int(rng.integers(1, 3))
        s = make_samples(rng, m + int(rng.integers(1, 5)), span=9.0)
        F = extend(s, ExtensionConfig(m=m, backend=backend))
        assert verify_necessity(s, F, m, p).passed
