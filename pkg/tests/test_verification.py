import json

import numpy as np
import pytest

from src.app.core.exceptions import ConfigurationError
from src.app.schemas.activation import ActivationKind, ActivationSpec
from src.app.services.verification import (
    VerificationSuite,
    analytic_grad,
    mutated_grad,
    run_verification,
)
from tests.helpers.generators import random_points


@pytest.fixture(scope="module")
def full_report():
    return run_verification()


class TestFullSuite:
    """Test the unmodified suite."""

    def test_everything_passes(self, full_report):
        """Test every registered check passes on the shipped kernels."""
        assert full_report.failed == []
        assert full_report.passed

    def test_registered_checks(self, full_report):
        """Test the suite covers every kind and every property family."""
        names = {check.name for check in full_report.checks}
        for kind in ActivationKind:
            assert f"gradient-check:{kind.value}" in names
            assert f"cost-audit:{kind.value}" in names
            assert f"network-gradient:{kind.value}" in names
        assert {
            "mish-closed-form",
            "mish-closed-form:finite-difference",
            "swish-identity:rho=1",
            "swish-identity:rho=2",
            "domain-split:positive",
            "domain-split:negative",
            "domain-split:piecewise",
            "piecewise-continuity",
            "bounded-below:aptx",
            "bounded-below:mish",
            "cost-dominance:forward",
            "cost-dominance:derivative",
            "irrelevant-parameters",
        } <= names

    def test_bounded_below_measurements(self, full_report):
        """Test the reported APTx minimum is near -0.139 at -0.64."""
        check = next(c for c in full_report.checks if c.name == "bounded-below:aptx")
        assert json.dumps(check.measured)
        assert any(np.isclose(v, -0.1392322713805369, atol=1e-6) for v in check.measured.values() if isinstance(v, float))

    def test_report_serialises(self, full_report):
        """Test the report is valid JSON."""
        payload = json.loads(full_report.model_dump_json())
        assert payload["passed"] is True
        assert len(payload["checks"]) == len(full_report.checks)


class TestSelect:
    """Test name filtering."""

    def test_prefix(self):
        """Test a prefix picks the whole family."""
        names = VerificationSuite().select("gradient-check")
        assert names == [f"gradient-check:{kind.value}" for kind in ActivationKind]

    def test_comma_separated(self):
        """Test several prefixes combine."""
        names = VerificationSuite().select("swish-identity, piecewise")
        assert names == ["swish-identity:rho=1", "swish-identity:rho=2", "piecewise-continuity"]

    def test_empty_filter_selects_all(self):
        """Test no filter runs everything."""
        suite = VerificationSuite()
        assert suite.select(None) == list(suite.checks)

    def test_unknown_filter(self):
        """Test a filter that matches nothing is a configuration error."""
        with pytest.raises(ConfigurationError):
            VerificationSuite().select("no-such-check")


class TestMutation:
    """Test the suite notices perturbed derivatives."""

    def test_mutated_grad(self, aptx, mish):
        """Test only the targeted kind is shifted."""
        xs = random_points(10)
        grad = mutated_grad(ActivationKind.APTX, 0.01)
        np.testing.assert_array_equal(grad(aptx, xs), analytic_grad(aptx, xs) + 0.01)
        np.testing.assert_array_equal(grad(mish, xs), analytic_grad(mish, xs))

    @pytest.mark.parametrize("kind", list(ActivationKind))
    def test_gradient_check_catches_mutation(self, kind):
        """Test +0.01 on any derivative fails exactly that kind's gradient check."""
        report = run_verification("gradient-check", mutate_kind=kind, mutate_delta=0.01)
        assert not report.passed
        assert report.failed == [f"gradient-check:{kind.value}"]

    def test_mish_closed_form_catches_mutation(self):
        """Test the closed-form comparison fails when MISH' is shifted."""
        report = run_verification("mish-closed-form", mutate_kind=ActivationKind.MISH)
        assert "mish-closed-form" in report.failed

    def test_custom_grad_fn(self):
        """Test a suite built on a broken derivative reports the failure."""
        suite = VerificationSuite(grad_fn=lambda spec, xs: np.zeros_like(xs), n_points=50)
        result = suite.gradient_check(ActivationSpec(kind=ActivationKind.TANH))
        assert not result.passed
        assert result.measured["n_points"] == 50

    def test_kink_exclusion(self):
        """Test points within ten steps of a kink are dropped."""
        suite = VerificationSuite(n_points=1000)
        result = suite.gradient_check(ActivationSpec(kind=ActivationKind.RELU))
        assert result.passed
        assert result.measured["n_points"] <= 1000
