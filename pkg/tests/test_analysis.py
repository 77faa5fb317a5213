import numpy as np
import pytest

from src.app.core.exceptions import ConfigurationError, DomainError
from src.app.schemas.analysis import PiecewiseApproximant
from src.app.services.activation_core import eval
from src.app.services.analysis import (
    compare,
    compare_grads,
    derivative_diagnostics,
    make_grid,
    piecewise_aptx_mish_approximant,
    piecewise_aptx_mish_approximant_grad,
    sample_series,
    swish_identity_report,
)
from tests.conftest import fake
from tests.helpers.generators import spec_of


class TestMakeGrid:
    """Test grid construction."""

    def test_endpoints_included(self):
        """Test hi is part of the grid when it lies on a step."""
        np.testing.assert_array_equal(make_grid(-1.0, 1.0, 0.5), [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_exact_zero(self):
        """Test snapping puts 0 on the grid exactly, without a sign."""
        xs = make_grid(-5.0, 5.0, 0.1)
        zero = xs[np.argmin(np.abs(xs))]
        assert zero == 0.0
        assert not np.signbit(zero)

    def test_single_point(self):
        """Test lo == hi yields one point."""
        np.testing.assert_array_equal(make_grid(2.0, 2.0, 0.3), [2.0])

    def test_invalid(self):
        """Test reversed bounds and non-positive steps."""
        with pytest.raises(ConfigurationError):
            make_grid(1.0, 0.0, 0.1)
        with pytest.raises(ConfigurationError):
            make_grid(0.0, 1.0, -0.1)

    def test_step_below_snapping_resolution_rejected(self):
        """Test steps finer than the 12-decimal snapping are refused instead of collapsing points."""
        with pytest.raises(ConfigurationError):
            make_grid(0.0, 1e-12, 1e-13)
        xs = make_grid(0.0, 1e-11, 1e-12)
        assert np.all(np.diff(xs) > 0)


class TestSampleSeries:
    """Test sampled value and derivative series."""

    def test_relu(self):
        """Test ReLU on three points."""
        series = sample_series(spec_of("relu"), -1.0, 1.0, 1.0)
        assert series.xs == [-1.0, 0.0, 1.0]
        assert series.values == [0.0, 0.0, 1.0]

    def test_sigmoid_single_point(self):
        """Test the degenerate one-point grid."""
        series = sample_series(spec_of("sigmoid"), 0.0, 0.0, 0.1)
        assert (series.xs, series.values, series.grads) == ([0.0], [0.5], [0.25])

    def test_aptx_minimum(self, aptx):
        """Test the sampled APTx minimum is about -0.139."""
        series = sample_series(aptx, -5.0, 5.0, 0.5)
        assert min(series.values) == pytest.approx(-0.139, abs=5e-3)
        assert all(b > a for a, b in zip(series.xs, series.xs[1:]))

    def test_domain_error_propagates(self, aptx):
        """Test an infinite bound is rejected before evaluation."""
        with pytest.raises((ConfigurationError, DomainError)):
            sample_series(aptx, -np.inf, 0.0, 0.1)


class TestCompare:
    """Test approximation-error reports."""

    def test_identical(self, mish):
        """Test a curve compared with itself has zero error."""
        report = compare(mish, mish, -5.0, 5.0, 0.01)
        assert report.max_abs_err == 0.0
        assert report.rmse == 0.0

    def test_split_partitions_grid(self, aptx, mish):
        """Test the sign split covers every sample once, with 0 on the positive side."""
        report = compare(aptx, mish, -1.0, 1.0, 0.5)
        assert report.negative.n_samples == 2
        assert report.positive.n_samples == 3
        assert report.negative.n_samples + report.positive.n_samples == report.n_samples

    def test_rmse_bounded_by_max(self, aptx, mish):
        """Test rmse never exceeds the maximum error."""
        report = compare(aptx, mish, -10.0, 10.0, 0.01)
        assert 0.0 <= report.rmse <= report.max_abs_err

    def test_positive_only_domain(self, aptx, mish):
        """Test no negative metrics on [0, hi]."""
        report = compare(aptx, mish, 0.0, 10.0, 0.01)
        assert report.negative is None
        assert report.positive.max_abs_err == report.max_abs_err

    def test_positive_domain_prefers_beta_one(self, aptx, aptx_half_beta, mish):
        """Test APTx(1, 1, 1/2) tracks MISH better on [0, 10]."""
        closer = compare(aptx, mish, 0.0, 10.0, 0.001)
        farther = compare(aptx_half_beta, mish, 0.0, 10.0, 0.001)
        assert closer.max_abs_err < farther.max_abs_err

    def test_negative_domain_prefers_half_beta(self, aptx, aptx_half_beta, mish):
        """Test the preference reverses on [-10, 0]."""
        half = compare(aptx_half_beta, mish, -10.0, 0.0, 0.001)
        full = compare(aptx, mish, -10.0, 0.0, 0.001)
        assert half.max_abs_err < full.max_abs_err

    def test_spot_values_at_one(self, aptx, aptx_half_beta, mish):
        """Test the x = 1 oracle behind the positive-domain preference."""
        assert eval(aptx, 1.0) == pytest.approx(0.8808, abs=1e-4)
        assert eval(aptx_half_beta, 1.0) == pytest.approx(0.7311, abs=1e-4)
        assert eval(mish, 1.0) == pytest.approx(0.8651, abs=1e-4)


class TestCompareGrads:
    """Test derivative error reports."""

    def test_swish_identity(self, aptx_half_beta):
        """Test the SWISH identity holds for derivatives."""
        report = compare_grads(spec_of("swish"), aptx_half_beta, -20.0, 20.0, 0.001)
        assert report.max_abs_err <= 1e-12
        assert report.quantity == "derivative"

    def test_identical(self, mish):
        """Test zero error against itself."""
        assert compare_grads(mish, mish, -5.0, 5.0, 0.01).max_abs_err == 0.0

    def test_positive_domain_prefers_beta_one(self, aptx, aptx_half_beta, mish):
        """Test the positive-domain derivative fit."""
        closer = compare_grads(aptx, mish, 0.0, 10.0, 0.001)
        farther = compare_grads(aptx_half_beta, mish, 0.0, 10.0, 0.001)
        assert closer.positive.max_abs_err < farther.positive.max_abs_err


class TestPiecewise:
    """Test the two-branch APTx approximant of MISH."""

    def test_origin(self):
        """Test both branches vanish at 0."""
        assert piecewise_aptx_mish_approximant(0.0) == 0.0

    def test_branch_selection(self, aptx, aptx_half_beta):
        """Test x >= 0 uses beta = 1 and x < 0 uses beta = 1/2."""
        assert piecewise_aptx_mish_approximant(1.0) == eval(aptx, 1.0)
        assert piecewise_aptx_mish_approximant(-1.0) == eval(aptx_half_beta, -1.0)

    def test_derivative_continuous_at_zero(self):
        """Test one-sided slopes agree at 0."""
        left = piecewise_aptx_mish_approximant_grad(-1e-300)
        right = piecewise_aptx_mish_approximant_grad(0.0)
        assert right == 0.5
        assert abs(left - right) <= 1e-12

    def test_beats_single_beta(self, aptx, aptx_half_beta, mish):
        """Test the piecewise form is the best MISH approximant on [-10, 10]."""
        piecewise = compare(PiecewiseApproximant(), mish, -10.0, 10.0, 0.001)
        assert piecewise.max_abs_err < compare(aptx, mish, -10.0, 10.0, 0.001).max_abs_err
        assert piecewise.max_abs_err < compare(aptx_half_beta, mish, -10.0, 10.0, 0.001).max_abs_err

    def test_label(self):
        """Test the label names both branches."""
        assert PiecewiseApproximant().label == "piecewise[aptx(alpha=1,beta=0.5,gamma=0.5)|aptx(alpha=1,beta=1,gamma=0.5)]"


class TestDerivativeDiagnostics:
    """Test derivative range and vanishing-slope share."""

    def test_sigmoid_peak(self):
        """Test sigmoid' peaks at 0.25 at the origin."""
        diag = derivative_diagnostics(spec_of("sigmoid"), -10.0, 10.0, 0.01)
        assert diag.grad_max == pytest.approx(0.25, abs=1e-9)
        assert diag.grad_argmax == 0.0

    def test_tanh_peak(self):
        """Test tanh' peaks at 1 at the origin."""
        diag = derivative_diagnostics(spec_of("tanh"), -10.0, 10.0, 0.01)
        assert diag.grad_max == pytest.approx(1.0, abs=1e-9)
        assert diag.grad_min <= diag.grad_max

    def test_dying_relu(self):
        """Test every negative ReLU slope is below epsilon."""
        diag = derivative_diagnostics(spec_of("relu"), -10.0, -0.01, 0.01)
        assert diag.fraction_below == 1.0

    def test_tanh_range_contains_sigmoid(self):
        """Test the tanh derivative range strictly contains the sigmoid one."""
        half_width = fake.pyfloat(min_value=1.0, max_value=15.0)
        tanh = derivative_diagnostics(spec_of("tanh"), -half_width, half_width, 0.01)
        sigmoid = derivative_diagnostics(spec_of("sigmoid"), -half_width, half_width, 0.01)
        assert tanh.grad_min < sigmoid.grad_min
        assert tanh.grad_max > sigmoid.grad_max


class TestSwishIdentity:
    """Test APTx(1, rho/2, 1/2) against SWISH(rho)."""

    @pytest.mark.parametrize("rho", [1.0, 2.0])
    def test_identity(self, rho):
        """Test values and derivatives agree to 1e-12 on [-20, 20]."""
        value, grad = swish_identity_report(rho, -20.0, 20.0, 0.001)
        assert value.max_abs_err <= 1e-12
        assert grad.max_abs_err <= 1e-12

    def test_random_rho(self):
        """Test the identity for a Faker-drawn rho."""
        rho = fake.pyfloat(min_value=0.2, max_value=4.0)
        value, grad = swish_identity_report(rho, -10.0, 10.0, 0.01)
        assert value.max_abs_err <= 1e-12
        assert grad.max_abs_err <= 1e-12
