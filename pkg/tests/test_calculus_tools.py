import math

import numpy as np
import pytest

from src.app.core.exceptions import ConfigurationError, OracleError
from src.app.schemas.calculus import DiffConfig
from src.app.services.activation_core import eval, eval_batch, eval_grad_batch
from src.app.services.calculus_tools import central_diff, find_min, grid_min, relative_error
from tests.conftest import fake
from tests.helpers.generators import random_points

APTX_ARGMIN = -0.6392322713805369
APTX_MIN = -0.1392322713805369


class TestCentralDiff:
    """Test the symmetric finite-difference oracle."""

    def test_identity(self):
        """Test the slope of x is 1."""
        assert central_diff(lambda x: x, 5.0) == pytest.approx(1.0, abs=1e-9)

    def test_square(self):
        """Test d/dx x^2 at a Faker-drawn point."""
        x = fake.pyfloat(min_value=-10.0, max_value=10.0)
        assert central_diff(lambda t: t * t, x) == pytest.approx(2.0 * x, abs=1e-8)

    def test_vectorised(self, aptx):
        """Test array inputs give the elementwise derivative."""
        xs = random_points(100, -5.0, 5.0)
        _, grads = eval_grad_batch(aptx, xs)
        numeric = central_diff(lambda t: eval_batch(aptx, t), xs)
        assert numeric.shape == xs.shape
        assert np.max(np.abs(numeric - grads)) < 1e-8

    def test_custom_step(self):
        """Test a coarse step on a cubic shows the h^2 truncation term."""
        numeric = central_diff(lambda x: x**3, 1.0, DiffConfig(step=0.1))
        assert numeric == pytest.approx(3.0 + 0.01, abs=1e-12)

    def test_non_finite_sample_raises(self):
        """Test a sample landing on a pole raises OracleError."""
        with pytest.raises(OracleError):
            central_diff(lambda x: math.inf if x > 0 else 0.0, 0.0)

    def test_invalid_step(self):
        """Test the step must be positive."""
        with pytest.raises(ValueError):
            DiffConfig(step=0.0)


class TestRelativeError:
    """Test the relative-error metric and its floor."""

    def test_floor_applies_near_zero(self):
        """Test |a| < floor divides by the floor."""
        assert relative_error(1e-8, 2e-8) == pytest.approx(1e-8)

    def test_large_values(self):
        """Test |a| above the floor is the divisor."""
        assert relative_error(100.0, 101.0) == pytest.approx(0.01)

    def test_array(self):
        """Test elementwise evaluation."""
        err = relative_error(np.array([2.0, 0.0]), np.array([2.0, 0.5]))
        np.testing.assert_allclose(err, [0.0, 0.5])


class TestFindMin:
    """Test scan plus golden-section minimisation."""

    def test_quadratic(self):
        """Test an off-centre parabola."""
        result = find_min(lambda x: (x - 0.3) ** 2 + 1.0, -1.0, 1.0)
        assert result.argmin == pytest.approx(0.3, abs=1e-7)
        assert result.min_value == pytest.approx(1.0, abs=1e-14)

    def test_aptx_minimum(self, aptx):
        """Test the single negative lobe of APTx(1, 1, 1/2)."""
        result = find_min(lambda x: eval(aptx, x), -10.0, 0.0)
        assert result.argmin == pytest.approx(APTX_ARGMIN, abs=1e-6)
        assert result.min_value == pytest.approx(APTX_MIN, abs=1e-12)
        assert result.bracket[0] <= result.argmin <= result.bracket[1]

    def test_mish_minimum(self, mish):
        """Test MISH's minimum near -1.19."""
        result = find_min(lambda x: eval(mish, x), -10.0, 0.0)
        assert result.min_value == pytest.approx(-0.30884, abs=1e-4)
        assert result.argmin == pytest.approx(-1.192, abs=5e-3)

    def test_minimum_on_boundary(self):
        """Test a monotone function is minimised at the lower end."""
        result = find_min(lambda x: x, 2.0, 3.0)
        assert result.argmin == pytest.approx(2.0, abs=1e-9)

    def test_bad_interval(self):
        """Test lo >= hi is a configuration error."""
        with pytest.raises(ConfigurationError):
            find_min(lambda x: x, 1.0, 1.0)

    def test_bad_tolerance(self):
        """Test tol must be positive."""
        with pytest.raises(ConfigurationError):
            find_min(lambda x: x, 0.0, 1.0, tol=0.0)

    def test_non_finite_sample(self):
        """Test a NaN sample raises OracleError."""
        with pytest.raises(OracleError):
            find_min(lambda x: math.nan, 0.0, 1.0)


class TestGridMin:
    """Test the brute-force oracle."""

    def test_aptx_matches_find_min(self, aptx):
        """Test the grid and refined minima agree to grid resolution."""
        result = grid_min(lambda xs: eval_batch(aptx, xs), -2.0, 0.0, 1e-5)
        assert result.argmin == pytest.approx(APTX_ARGMIN, abs=1e-5)
        assert result.min_value == pytest.approx(APTX_MIN, abs=1e-10)

    def test_chunking_is_transparent(self, aptx):
        """Test chunk size does not change the result."""
        whole = grid_min(lambda xs: eval_batch(aptx, xs), -2.0, 0.0, 1e-3)
        chunked = grid_min(lambda xs: eval_batch(aptx, xs), -2.0, 0.0, 1e-3, chunk=7)
        assert whole == chunked

    def test_bad_step(self):
        """Test a zero step is rejected."""
        with pytest.raises(ConfigurationError):
            grid_min(lambda xs: xs, 0.0, 1.0, 0.0)

    def test_non_finite(self):
        """Test non-finite samples raise OracleError."""
        with pytest.raises(OracleError):
            grid_min(lambda xs: np.where(xs > 0.0, np.inf, xs), -1.0, 1.0, 0.5)
