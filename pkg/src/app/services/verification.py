"""Invariant suite behind ``verify``.

Each check is a named method returning a :class:`CheckResult` with the measured
quantities. Analytic derivatives are read through ``grad_fn`` so a perturbed
derivative can be injected and the suite shown to catch it.
"""

import logging
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from ..core.config import settings
from ..core.exceptions import ConfigurationError
from ..schemas.activation import RELEVANT_PARAMETERS, ActivationKind, ActivationSpec
from ..schemas.analysis import PiecewiseApproximant
from ..schemas.calculus import DiffConfig
from ..schemas.training import DatasetName, LossName
from ..schemas.verification import CheckResult, VerifyReport
from .activation_core import eval_batch, eval_grad_batch, mish_grad_closed_form, swish_as_aptx
from .analysis import compare, derivative_diagnostics, make_grid
from .calculus_tools import central_diff, find_min, grid_min, relative_error
from .nn_trainer import generate_dataset, gradient_check, init_model
from .perf import audit_expression, count_mish_closed_form, count_ops

logger = logging.getLogger(__name__)

GradFn = Callable[[ActivationSpec, npt.NDArray[np.float64]], npt.NDArray[np.float64]]

GRADIENT_TOL = 1e-6
CLOSED_FORM_TOL = 1e-9
IDENTITY_TOL = 1e-12
MIN_ORACLE_TOL = 1e-6
NETWORK_GRADIENT_TOL = 1e-5
AUDIT_TOL = 1e-12
# points this close to a kink (in units of the difference step) are skipped
KINK_EXCLUSION_STEPS = 10

APTX_DEFAULT = ActivationSpec(kind=ActivationKind.APTX)
APTX_HALF_BETA = ActivationSpec(kind=ActivationKind.APTX, aptx_beta=0.5)
MISH = ActivationSpec(kind=ActivationKind.MISH)
PIECEWISE = PiecewiseApproximant()
KINKED = {ActivationKind.RELU, ActivationKind.LEAKY_RELU, ActivationKind.ELU}

# values that differ from every default, used to show irrelevant fields are ignored
PERTURBED_PARAMETERS = {
    "leak_alpha": 0.3,
    "elu_alpha": 0.7,
    "swish_rho": 3.0,
    "aptx_alpha": 2.5,
    "aptx_beta": -1.5,
    "aptx_gamma": 4.0,
}


def analytic_grad(spec: ActivationSpec, xs: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return eval_grad_batch(spec, xs)[1]


def mutated_grad(kind: ActivationKind, delta: float, base: GradFn = analytic_grad) -> GradFn:
    """``base`` with ``delta`` added to every derivative of ``kind``."""

    def grad(spec: ActivationSpec, xs: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        grads = base(spec, xs)
        return grads + delta if spec.kind is kind else grads

    return grad


def _result(name: str, passed: bool, threshold: float | None = None, **measured) -> CheckResult:
    return CheckResult(
        name=name,
        passed=bool(passed),
        threshold=threshold,
        measured={k: float(v) if isinstance(v, np.floating | np.integer) else v for k, v in measured.items()},
    )


class VerificationSuite:
    def __init__(
        self,
        grad_fn: GradFn = analytic_grad,
        seed: int = settings.VERIFY_SEED,
        n_points: int = settings.VERIFY_POINTS,
        diff_step: float = settings.VERIFY_DIFF_STEP,
    ) -> None:
        self.grad_fn = grad_fn
        self.seed = seed
        self.n_points = n_points
        self.diff = DiffConfig(step=diff_step, rel_floor=1.0)
        self.checks: dict[str, Callable[[], CheckResult]] = self._register()

    def _register(self) -> dict[str, Callable[[], CheckResult]]:
        checks: dict[str, Callable[[], CheckResult]] = {}
        for kind in ActivationKind:
            checks[f"gradient-check:{kind.value}"] = lambda kind=kind: self.gradient_check(ActivationSpec(kind=kind))
        checks["mish-closed-form"] = self.mish_closed_form
        checks["mish-closed-form:finite-difference"] = self.mish_closed_form_finite_difference
        for rho in (1.0, 2.0):
            checks[f"swish-identity:rho={rho:g}"] = lambda rho=rho: self.swish_identity(rho)
        checks["domain-split:positive"] = self.domain_split_positive
        checks["domain-split:negative"] = self.domain_split_negative
        checks["domain-split:piecewise"] = self.domain_split_piecewise
        checks["piecewise-continuity"] = self.piecewise_continuity
        checks["bounded-below:aptx"] = lambda: self.bounded_below("bounded-below:aptx", APTX_DEFAULT)
        checks["bounded-below:mish"] = lambda: self.bounded_below("bounded-below:mish", MISH)
        checks["symmetry:tanh-odd"] = self.tanh_odd
        checks["symmetry:sigmoid-reflection"] = self.sigmoid_reflection
        checks["aptx-gamma-linearity"] = self.aptx_gamma_linearity
        checks["derivative-range:tanh-contains-sigmoid"] = self.derivative_range
        checks["cost-dominance:forward"] = self.cost_dominance_forward
        checks["cost-dominance:derivative"] = self.cost_dominance_derivative
        for kind in ActivationKind:
            checks[f"cost-audit:{kind.value}"] = lambda kind=kind: self.cost_audit(ActivationSpec(kind=kind))
        checks["irrelevant-parameters"] = self.irrelevant_parameters
        for kind in ActivationKind:
            checks[f"network-gradient:{kind.value}"] = lambda kind=kind: self.network_gradient(ActivationSpec(kind=kind))
        return checks

    def _grad(self, spec: ActivationSpec, xs: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
        return np.asarray(self.grad_fn(spec, xs), dtype=np.float64)

    def gradient_check(self, spec: ActivationSpec) -> CheckResult:
        rng = np.random.default_rng(self.seed)
        xs = rng.uniform(-20.0, 20.0, size=self.n_points)
        if spec.kind in KINKED:
            xs = xs[np.abs(xs) >= KINK_EXCLUSION_STEPS * self.diff.step]
        numeric = central_diff(lambda v: eval_batch(spec, v), xs, self.diff)
        err = relative_error(self._grad(spec, xs), numeric, self.diff)
        i = int(np.argmax(err))
        return _result(
            f"gradient-check:{spec.kind.value}",
            err[i] <= GRADIENT_TOL,
            GRADIENT_TOL,
            max_rel_err=err[i],
            at_x=xs[i],
            n_points=int(xs.size),
        )

    def mish_closed_form(self) -> CheckResult:
        xs = make_grid(-20.0, 20.0, 1e-2)
        err = np.abs(self._grad(MISH, xs) - mish_grad_closed_form(xs))
        i = int(np.argmax(err))
        return _result("mish-closed-form", err[i] <= CLOSED_FORM_TOL, CLOSED_FORM_TOL, max_abs_err=err[i], at_x=xs[i])

    def mish_closed_form_finite_difference(self) -> CheckResult:
        xs = make_grid(-20.0, 20.0, 1e-2)
        numeric = central_diff(lambda v: eval_batch(MISH, v), xs, self.diff)
        err = relative_error(mish_grad_closed_form(xs), numeric, self.diff)
        i = int(np.argmax(err))
        return _result(
            "mish-closed-form:finite-difference", err[i] <= GRADIENT_TOL, GRADIENT_TOL, max_rel_err=err[i], at_x=xs[i]
        )

    def swish_identity(self, rho: float) -> CheckResult:
        swish = ActivationSpec(kind=ActivationKind.SWISH, swish_rho=rho)
        aptx = swish_as_aptx(rho)
        xs = make_grid(-20.0, 20.0, 1e-3)
        value_err = float(np.max(np.abs(eval_batch(aptx, xs) - eval_batch(swish, xs))))
        grad_err = float(np.max(np.abs(self._grad(aptx, xs) - self._grad(swish, xs))))
        return _result(
            f"swish-identity:rho={rho:g}",
            max(value_err, grad_err) <= IDENTITY_TOL,
            IDENTITY_TOL,
            value_max_abs_err=value_err,
            grad_max_abs_err=grad_err,
        )

    def _split(self, name: str, lo: float, hi: float, better, worse) -> CheckResult:
        better_err = compare(better, MISH, lo, hi, 1e-3).max_abs_err
        worse_err = compare(worse, MISH, lo, hi, 1e-3).max_abs_err
        return _result(
            name,
            better_err < worse_err,
            None,
            domain=[lo, hi],
            **{f"{better.label}": better_err, f"{worse.label}": worse_err},
        )

    def domain_split_positive(self) -> CheckResult:
        return self._split("domain-split:positive", 0.0, 10.0, APTX_DEFAULT, APTX_HALF_BETA)

    def domain_split_negative(self) -> CheckResult:
        return self._split("domain-split:negative", -10.0, 0.0, APTX_HALF_BETA, APTX_DEFAULT)

    def domain_split_piecewise(self) -> CheckResult:
        errors = {c.label: compare(c, MISH, -10.0, 10.0, 1e-3).max_abs_err for c in (PIECEWISE, APTX_DEFAULT, APTX_HALF_BETA)}
        piecewise = errors[PIECEWISE.label]
        passed = all(piecewise < err for label, err in errors.items() if label != PIECEWISE.label)
        return _result("domain-split:piecewise", passed, None, **errors)

    def piecewise_continuity(self) -> CheckResult:
        origin = np.zeros(1)
        value_gap = abs(float(eval_batch(PIECEWISE.negative, origin)[0] - eval_batch(PIECEWISE.positive, origin)[0]))
        grad_gap = abs(float(self._grad(PIECEWISE.negative, origin)[0] - self._grad(PIECEWISE.positive, origin)[0]))
        return _result(
            "piecewise-continuity",
            max(value_gap, grad_gap) <= IDENTITY_TOL,
            IDENTITY_TOL,
            value_gap=value_gap,
            grad_gap=grad_gap,
        )

    def bounded_below(self, name: str, spec: ActivationSpec) -> CheckResult:
        def f(x: float) -> float:
            return float(eval_batch(spec, np.array([x]))[0])

        found = find_min(f, -10.0, 0.0)
        oracle = grid_min(lambda xs: eval_batch(spec, xs), -2.0, 0.0, 1e-6)
        wide = grid_min(lambda xs: eval_batch(spec, xs), -100.0, 100.0, 1e-3)
        at_100 = f(100.0)
        passed = (
            abs(found.min_value - oracle.min_value) <= MIN_ORACLE_TOL
            and wide.min_value >= found.min_value - 1e-9
            and at_100 > 99.0
        )
        return _result(
            name,
            passed,
            MIN_ORACLE_TOL,
            argmin=found.argmin,
            min_value=found.min_value,
            oracle_argmin=oracle.argmin,
            oracle_min_value=oracle.min_value,
            wide_grid_min=wide.min_value,
            value_at_100=at_100,
        )

    def tanh_odd(self) -> CheckResult:
        spec = ActivationSpec(kind=ActivationKind.TANH)
        xs = make_grid(-20.0, 20.0, 1e-3)
        err = float(np.max(np.abs(eval_batch(spec, -xs) + eval_batch(spec, xs))))
        return _result("symmetry:tanh-odd", err <= IDENTITY_TOL, IDENTITY_TOL, max_abs_err=err)

    def sigmoid_reflection(self) -> CheckResult:
        spec = ActivationSpec(kind=ActivationKind.SIGMOID)
        xs = make_grid(-20.0, 20.0, 1e-3)
        err = float(np.max(np.abs(eval_batch(spec, -xs) - (1.0 - eval_batch(spec, xs)))))
        return _result("symmetry:sigmoid-reflection", err <= IDENTITY_TOL, IDENTITY_TOL, max_abs_err=err)

    def aptx_gamma_linearity(self) -> CheckResult:
        doubled = APTX_DEFAULT.model_copy(update={"aptx_gamma": 2.0 * APTX_DEFAULT.aptx_gamma})
        xs = make_grid(-20.0, 20.0, 1e-3)
        err = float(np.max(np.abs(eval_batch(doubled, xs) - 2.0 * eval_batch(APTX_DEFAULT, xs))))
        return _result("aptx-gamma-linearity", err <= IDENTITY_TOL, IDENTITY_TOL, max_abs_err=err)

    def derivative_range(self) -> CheckResult:
        tanh = derivative_diagnostics(ActivationSpec(kind=ActivationKind.TANH), -10.0, 10.0, 1e-2)
        sigmoid = derivative_diagnostics(ActivationSpec(kind=ActivationKind.SIGMOID), -10.0, 10.0, 1e-2)
        passed = tanh.grad_min < sigmoid.grad_min and tanh.grad_max > sigmoid.grad_max
        return _result(
            "derivative-range:tanh-contains-sigmoid",
            passed,
            None,
            tanh=[tanh.grad_min, tanh.grad_max],
            sigmoid=[sigmoid.grad_min, sigmoid.grad_max],
        )

    def cost_dominance_forward(self) -> CheckResult:
        aptx = count_ops(APTX_DEFAULT).forward.transcendental
        mish = count_ops(MISH).forward.transcendental
        return _result("cost-dominance:forward", aptx < mish, None, aptx=aptx, mish=mish)

    def cost_dominance_derivative(self) -> CheckResult:
        aptx = count_ops(APTX_DEFAULT).derivative.transcendental
        mish = count_ops(MISH).derivative.transcendental
        closed_form = count_mish_closed_form().transcendental
        return _result(
            "cost-dominance:derivative",
            aptx < mish and aptx < closed_form,
            None,
            aptx=aptx,
            mish=mish,
            mish_closed_form=closed_form,
        )

    def cost_audit(self, spec: ActivationSpec) -> CheckResult:
        xs = np.linspace(-5.0, 5.0, 101).tolist()
        deviation = audit_expression(spec, xs)
        return _result(f"cost-audit:{spec.kind.value}", deviation <= AUDIT_TOL, AUDIT_TOL, max_abs_dev=deviation)

    def irrelevant_parameters(self) -> CheckResult:
        xs = make_grid(-5.0, 5.0, 1e-2)
        changed = []
        for kind in ActivationKind:
            base = ActivationSpec(kind=kind)
            ignored = {k: v for k, v in PERTURBED_PARAMETERS.items() if k not in RELEVANT_PARAMETERS[kind]}
            other = ActivationSpec(kind=kind, **ignored)
            base_values, _ = eval_grad_batch(base, xs)
            other_values, _ = eval_grad_batch(other, xs)
            if not (np.array_equal(base_values, other_values) and np.array_equal(self._grad(base, xs), self._grad(other, xs))):
                changed.append(kind.value)
        return _result("irrelevant-parameters", not changed, None, changed_kinds=changed)

    def network_gradient(self, spec: ActivationSpec) -> CheckResult:
        inputs, labels = generate_dataset(DatasetName.TWO_MOONS, 16, 0.1, seed=13)
        model = init_model([2, 3, 2], spec, seed=13)
        worst = gradient_check(model, inputs, labels, LossName.CROSS_ENTROPY)
        return _result(
            f"network-gradient:{spec.kind.value}", worst <= NETWORK_GRADIENT_TOL, NETWORK_GRADIENT_TOL, max_rel_err=worst
        )

    def select(self, name_filter: str | None) -> list[str]:
        """Check names starting with any of the comma-separated prefixes in ``name_filter``."""
        if not name_filter:
            return list(self.checks)
        prefixes = [p.strip() for p in name_filter.split(",") if p.strip()]
        names = [name for name in self.checks if any(name.startswith(p) for p in prefixes)]
        if not names:
            raise ConfigurationError(f"Filter {name_filter!r} matches no check; known: {', '.join(self.checks)}")
        return names

    def run(self, name_filter: str | None = None) -> VerifyReport:
        results = []
        for name in self.select(name_filter):
            result = self.checks[name]()
            logger.debug(f"{name}: {'pass' if result.passed else 'FAIL'} {result.measured}")
            results.append(result)
        failed = [r.name for r in results if not r.passed]
        report = VerifyReport(checks=results, passed=not failed, failed=failed, filter=name_filter)
        logger.info(f"Verification: {len(results) - len(failed)}/{len(results)} checks passed")
        return report


def run_verification(
    name_filter: str | None = None,
    mutate_kind: ActivationKind | None = None,
    mutate_delta: float = 0.01,
) -> VerifyReport:
    grad_fn = analytic_grad if mutate_kind is None else mutated_grad(mutate_kind, mutate_delta)
    if mutate_kind is not None:
        logger.warning(f"Derivative of {mutate_kind.value} perturbed by {mutate_delta!r} for this run")
    return VerificationSuite(grad_fn=grad_fn).run(name_filter)
