import pymbolic.primitives as p
import pytest

from src.app.schemas.activation import ActivationKind, ActivationSpec
from src.app.schemas.perf import OpCounts
from src.app.services.perf import audit_expression, count_mish_closed_form, count_ops, expression_trees
from src.app.services.perf.cost_model import count_expression, x
from tests.helpers.generators import random_points, spec_of


class TestCountOps:
    """Test per-evaluation operation counts of the canonical trees."""

    def test_aptx_forward(self, aptx):
        """Test (alpha + tanh(x)) * gamma * x."""
        assert count_ops(aptx).forward == OpCounts(transcendental_tanh=1, additions=1, multiplications=2)

    def test_aptx_derivative(self, aptx):
        """Test gamma * (alpha + t + x * (1 - t * t))."""
        assert count_ops(aptx).derivative == OpCounts(transcendental_tanh=1, additions=3, multiplications=3)

    def test_aptx_beta_scaling_costs_one_multiply(self, aptx, aptx_half_beta):
        """Test beta != 1 adds exactly one multiplication per tree."""
        plain, scaled = count_ops(aptx), count_ops(aptx_half_beta)
        assert scaled.forward.multiplications == plain.forward.multiplications + 1
        assert scaled.derivative.multiplications == plain.derivative.multiplications + 1
        assert scaled.forward.transcendental == plain.forward.transcendental

    def test_mish_forward(self, mish):
        """Test x * tanh(log1p(exp(x)))."""
        assert count_ops(mish).forward == OpCounts(
            transcendental_exp=1, transcendental_log=1, transcendental_tanh=1, additions=1, multiplications=1
        )

    def test_mish_derivative(self, mish):
        """Test the softplus-gated derivative."""
        assert count_ops(mish).derivative == OpCounts(
            transcendental_exp=2, transcendental_log=1, transcendental_tanh=1, additions=4, multiplications=3
        )

    def test_swish_forward(self):
        """Test x / (1 + exp(-x)) written as x * sigmoid(x)."""
        assert count_ops(spec_of("swish")).forward == OpCounts(
            transcendental_exp=1, divisions=1, additions=1, multiplications=1
        )

    def test_relu_forward(self):
        """Test ReLU is a single comparison."""
        assert count_ops(spec_of("relu")).forward == OpCounts(comparisons=1)

    def test_sigmoid(self):
        """Test sigmoid and s * (1 - s)."""
        profile = count_ops(spec_of("sigmoid"))
        assert profile.forward == OpCounts(transcendental_exp=1, divisions=1, additions=1)
        assert profile.derivative == OpCounts(transcendental_exp=1, divisions=1, additions=2, multiplications=1)

    def test_tanh_derivative(self):
        """Test 1 - t * t."""
        assert count_ops(spec_of("tanh")).derivative == OpCounts(transcendental_tanh=1, additions=1, multiplications=1)

    def test_transcendental_dominance(self, aptx, mish):
        """Test APTx needs fewer transcendentals than MISH in both modes."""
        a, m = count_ops(aptx), count_ops(mish)
        assert (a.forward.transcendental, m.forward.transcendental) == (1, 3)
        assert a.derivative.transcendental < m.derivative.transcendental
        assert a.derivative.transcendental < count_mish_closed_form().transcendental

    def test_profile_label(self, aptx):
        """Test the profile carries the activation and its label."""
        profile = count_ops(aptx)
        assert profile.spec == aptx
        assert profile.label == aptx.label


class TestMishClosedFormCount:
    """Test the closed-form MISH derivative count."""

    def test_three_exponentials(self):
        """Test e^x, e^2x and e^3x each cost one exp."""
        counts = count_mish_closed_form()
        assert counts.transcendental_exp == 3
        assert counts.transcendental == 3
        assert counts.divisions == 1


class TestOperationCounter:
    """Test the counting rules on small trees."""

    def test_shared_subexpression_counted_once(self):
        """Test a CSE referenced twice is charged once."""
        t = p.CommonSubexpression(p.Call(p.Lookup(p.Variable("math"), "tanh"), (x,)))
        assert count_expression(p.Product((t, t))) == OpCounts(transcendental_tanh=1, multiplications=1)

    def test_if_charges_dearer_branch(self):
        """Test a conditional costs its condition plus the per-category maximum of its branches."""
        expr = p.If(p.Comparison(x, ">", 0), p.Product((x, x, x)), p.Sum((x, 1)))
        assert count_expression(expr) == OpCounts(comparisons=1, multiplications=2, additions=1)

    def test_sign_flip_is_free(self):
        """Test multiplying by -1 is not a multiplication."""
        assert count_expression(p.Product((-1, x))) == OpCounts()

    def test_unknown_function(self):
        """Test functions without a cost entry are rejected."""
        with pytest.raises(ValueError):
            count_expression(p.Call(p.Lookup(p.Variable("math"), "erf"), (x,)))

    def test_fractional_power(self):
        """Test non-integer powers are rejected."""
        with pytest.raises(ValueError):
            count_expression(p.Power(x, 0.5))


class TestAuditExpression:
    """Test the trees against the shipped kernels."""

    @pytest.mark.parametrize("kind", list(ActivationKind))
    def test_trees_match_kernels(self, kind):
        """Test pymbolic evaluation of each tree agrees with the kernel."""
        xs = random_points(25, -15.0, 15.0).tolist()
        assert audit_expression(ActivationSpec(kind=kind), xs) <= 1e-12

    def test_scaled_aptx(self, random_aptx):
        """Test the audit with beta != 1."""
        xs = random_points(25, -5.0, 5.0).tolist()
        assert audit_expression(random_aptx, xs) <= 1e-12

    def test_trees_are_expressions(self, default_specs):
        """Test every kind has both trees."""
        for spec in default_specs:
            for tree in expression_trees(spec):
                assert isinstance(tree, p.Expression)
