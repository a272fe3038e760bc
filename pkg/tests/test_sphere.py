"""S^2 harmonic analysis, geometric transforms, and the identity suite."""

import math

import mpmath
import numpy as np
import pytest

from coslab import sphere as sp
from coslab.errors import (
    ExcludedParameterError,
    GridTooCoarseError,
    OddInputError,
    QuadratureWindowError,
)

SQRT_PI = math.sqrt(math.pi)


@pytest.fixture(scope="module")
def grid():
    return sp.S2Grid(24, 48)


@pytest.fixture(scope="module")
def even_f(grid):
    return sp.random_even_function(grid, 10, np.random.default_rng(42))


class TestGrid:
    def test_weights(self, grid):
        assert grid.weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert grid.weights.shape == (24, 48)

    def test_shape_constraints(self):
        with pytest.raises(ValueError):
            sp.S2Grid(24, 24)   # n_phi < 2 n_theta
        with pytest.raises(ValueError):
            sp.S2Grid(24, 49)   # odd n_phi breaks the antipodal map

    def test_antipodal_indices_exact(self, grid):
        it, ip = grid.antipodal_indices()
        flipped = grid.points[np.ix_(it, ip)]
        assert np.abs(flipped + grid.points).max() == 0.0

    def test_band_limit(self, grid):
        assert grid.band_limit == 23


class TestAnalyzeSynthesize:
    def test_constant(self, grid):
        c = sp.analyze(sp.GridFunction(grid, np.ones((24, 48))), 8)
        assert c.get(0, 0) == pytest.approx(1.0, abs=1e-14)
        assert np.abs(c.coeffs[1:]).max() < 1e-14

    def test_z_coordinate(self, grid):
        c = sp.analyze(sp.GridFunction(grid, grid.points[..., 2]), 8)
        assert c.get(1, 0) == pytest.approx(1 / math.sqrt(3), rel=1e-13)
        rest = c.coeffs.copy()
        rest[c.index(1, 0)] = 0.0
        assert np.abs(rest).max() < 1e-14

    def test_delta_synthesis(self, grid):
        c = np.zeros(81)
        c[0] = 1.0
        f = sp.synthesize(sp.HarmonicCoeffs(8, c), grid)
        assert np.abs(f.values - 1.0).max() < 1e-14

    def test_zonal_degree_two(self, grid):
        c = np.zeros(81)
        coeffs = sp.HarmonicCoeffs(8, c)
        c[coeffs.index(2, 0)] = 1.0
        f = sp.synthesize(coeffs, grid)
        t = grid.points[..., 2]
        want = math.sqrt(5) * 0.5 * (3 * t ** 2 - 1)
        assert np.abs(f.values - want).max() < 1e-13

    def test_round_trip_and_parseval(self, grid):
        rng = np.random.default_rng(1)
        c0 = sp.HarmonicCoeffs(16, rng.uniform(-1, 1, 17 ** 2))
        f = sp.synthesize(c0, grid)
        c1 = sp.analyze(f, 16)
        assert np.abs(c1.coeffs - c0.coeffs).max() < 1e-12
        quad_energy = float(np.sum(grid.weights * f.values ** 2))
        assert quad_energy == pytest.approx(c0.energy(), rel=1e-13)

    def test_grid_too_coarse(self, grid):
        with pytest.raises(GridTooCoarseError):
            sp.analyze(sp.GridFunction(grid, np.ones((24, 48))), 24)

    def test_synthesize_at_matches_grid(self, grid, even_f):
        c = sp.analyze(even_f, 10)
        sub = grid.points[3::5, 7::11]
        vals = sp.synthesize_at(c, sub)
        assert np.abs(vals - even_f.values[3::5, 7::11]).max() < 1e-12


class TestApplySpectral:
    def test_cosine_on_constant_block(self, grid):
        c = np.zeros(81)
        c[0] = 1.0
        out = sp.apply_spectral(sp.HarmonicCoeffs(8, c), "M", alpha=0.5)
        assert out.get(0, 0) == pytest.approx(4.0, rel=1e-12)

    def test_funk_on_degree_two(self):
        c = np.zeros(81)
        hc = sp.HarmonicCoeffs(8, c)
        c[hc.index(2, 0)] = 1.0
        out = sp.apply_spectral(hc, "Funk")
        assert out.get(2, 0) == pytest.approx(-0.5, rel=1e-12)

    def test_poisson_scales_each_degree(self):
        c = np.ones(16)
        out = sp.apply_spectral(sp.HarmonicCoeffs(3, c), "Poisson", t=0.5)
        for j in range(4):
            block = out.degree_slice(j)
            assert np.allclose(block, 0.5 ** j, atol=0)


class TestCosineDirect:
    def test_constant_values(self, grid):
        ones = sp.GridFunction(grid, np.ones((24, 48)))
        out = sp.cosine_direct(ones, 2.0)
        assert np.abs(out.values + 2 * SQRT_PI).max() < 1e-12
        out = sp.cosine_direct(ones, 0.5)
        assert np.abs(out.values - 4.0).max() < 1e-12

    @pytest.mark.parametrize("alpha", [0.5, 1.5, 2.0, 2.5])
    def test_cross_engine(self, grid, even_f, alpha):
        direct = sp.cosine_direct(even_f, alpha, L=10)
        spec = sp.synthesize(sp.apply_spectral(sp.analyze(even_f, 10), "M",
                                               alpha=alpha), grid)
        assert np.abs(direct.values - spec.values).max() < 1e-6

    def test_window_and_exclusion(self, grid, even_f):
        with pytest.raises(QuadratureWindowError):
            sp.cosine_direct(even_f, 3.2)
        with pytest.raises(QuadratureWindowError):
            sp.cosine_direct(even_f, -0.5)
        with pytest.raises(ExcludedParameterError):
            sp.cosine_direct(even_f, 1.0)


class TestFunkDirect:
    def test_cos_squared_tilted(self, grid):
        # average of (u.e)^2 over the circle perpendicular to theta
        e = np.array([0.6, 0.0, 0.8])
        f = sp.GridFunction(grid, (grid.points @ e) ** 2)
        out = sp.funk_direct(f, L=4)
        want = (1.0 - (grid.points @ e) ** 2) / 2.0
        assert np.abs(out.values - want).max() < 1e-13

    def test_constant(self, grid):
        out = sp.funk_direct(sp.GridFunction(grid, np.full((24, 48), 2.5)), L=2)
        assert np.abs(out.values - 2.5).max() < 1e-13

    def test_odd_function_annihilated(self, grid):
        f = sp.GridFunction(grid, grid.points[..., 2])
        out = sp.funk_direct(f, L=4)
        assert np.abs(out.values).max() < 1e-14


class TestRadon:
    def test_r1_even_evaluates(self, grid, even_f):
        u = np.array([0.0, 0.6, 0.8])
        got = sp.radon_r1(even_f, u, L=10)
        want = sp.synthesize_at(sp.analyze(even_f, 10), u)
        assert float(got) == pytest.approx(float(want), abs=1e-12)

    def test_r1_odd_vanishes(self, grid):
        f = sp.GridFunction(grid, grid.points[..., 0])
        got = sp.radon_r1(f, np.array([1.0, 0.0, 0.0]), L=3)
        assert abs(float(got)) < 1e-13

    def test_r1_constant(self, grid):
        f = sp.GridFunction(grid, np.ones((24, 48)))
        assert float(sp.radon_r1(f, np.array([0, 0, 1.0]), L=2)) == pytest.approx(1.0)

    def test_dual_planes_constant(self, grid):
        phi = sp.GrassmannFunctionS2("planes", sp.GridFunction(grid, np.ones((24, 48))))
        out = sp.dual_radon(phi, L=2)
        assert np.abs(out.values - 1.0).max() < 1e-13

    def test_dual_lines_is_identity(self, grid, even_f):
        phi = sp.GrassmannFunctionS2("lines", even_f)
        out = sp.dual_radon(phi)
        assert np.array_equal(out.values, even_f.values)

    def test_dual_planes_degree_two_scaling(self, grid):
        c = np.zeros(81)
        hc = sp.HarmonicCoeffs(8, c)
        c[hc.index(2, 0)] = 1.0
        g = sp.synthesize(hc, grid)
        out = sp.dual_radon(sp.GrassmannFunctionS2("planes", g), L=8)
        assert np.abs(out.values + 0.5 * g.values).max() < 1e-13

    def test_grassmann_rejects_odd(self, grid):
        f = sp.GridFunction(grid, grid.points[..., 2])
        with pytest.raises(OddInputError):
            sp.GrassmannFunctionS2("lines", f)

    def test_perp_swaps_kind(self, grid, even_f):
        phi = sp.GrassmannFunctionS2("planes", even_f)
        assert phi.perp().kind == "lines"
        assert np.array_equal(phi.perp().repr_.values, even_f.values)


class TestRiAlphaDirect:
    def test_i2_matches_cosine(self, grid, even_f):
        out = sp.ri_alpha_direct(even_f, 2, 1.5, L=10)
        assert out.kind == "planes"
        ref = sp.cosine_direct(even_f, 1.5, L=10)
        assert np.abs(out.repr_.values - ref.values).max() == 0.0

    def test_i1_constant_closed_form(self, grid):
        # value on constants: sqrt(pi) Gamma((2-a)/2) / Gamma((a+1)/2)
        ones = sp.GridFunction(grid, np.ones((24, 48)))
        for alpha in (0.5, 1.5, 2.5):
            with mpmath.workdps(40):
                want = float(mpmath.sqrt(mpmath.pi) * mpmath.gamma((2 - alpha) / 2)
                             / mpmath.gamma((alpha + 1) / 2))
            out = sp.ri_alpha_direct(ones, 1, alpha, L=4)
            assert out.kind == "lines"
            assert np.abs(out.repr_.values - want).max() < 1e-12

    def test_i1_lattice_excluded(self, grid, even_f):
        with pytest.raises(ExcludedParameterError):
            sp.ri_alpha_direct(even_f, 1, 2.0)

    def test_sine_direct_agrees_with_spectral(self, grid, even_f):
        direct = sp.sine_direct(even_f, 1.5, L=10)
        spec = sp.synthesize(sp.apply_spectral(sp.analyze(even_f, 10), "Q",
                                               alpha=1.5), grid)
        assert np.abs(direct.values - spec.values).max() < 1e-12


class TestSerialization:
    def test_grid_function(self, grid, even_f):
        d = even_f.to_dict()
        back = sp.GridFunction.from_dict(d)
        assert np.allclose(back.values, even_f.values, atol=0)

    def test_coeffs(self):
        c = sp.HarmonicCoeffs(2, np.arange(9.0))
        back = sp.HarmonicCoeffs.from_dict(c.to_dict())
        assert back.L == 2 and np.array_equal(back.coeffs, c.coeffs)

    def test_grassmann(self, grid, even_f):
        phi = sp.GrassmannFunctionS2("planes", even_f)
        back = sp.GrassmannFunctionS2.from_dict(phi.to_dict())
        assert back.kind == "planes"
        assert np.allclose(back.repr_.values, even_f.values, atol=0)


class TestSuite:
    def test_everything_passes(self):
        reports = sp.verify_s2_suite(L=12, tol=1e-6, seed=7)
        failed = [r for r in reports if not r.passed]
        assert not failed, [(r.identity, r.max_abs_err) for r in failed]

    def test_deterministic_under_seed(self):
        a = sp.verify_s2_suite(L=8, tol=1e-6, seed=3, n_functions=2)
        b = sp.verify_s2_suite(L=8, tol=1e-6, seed=3, n_functions=2)
        assert [(r.identity, r.max_abs_err) for r in a] == \
               [(r.identity, r.max_abs_err) for r in b]
