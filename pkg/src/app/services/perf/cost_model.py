"""Static operation-cost model.

Every activation has a canonical forward and derivative expression tree, written as
pymbolic expressions that mirror the arithmetic of the matching kernel in
``activation_core`` (overflow guards such as clamps and the large-x softplus branch
are not part of the trees). Shared subexpressions are wrapped in
``CommonSubexpression`` and counted once.
"""

import logging
import math
from collections import Counter

import numpy as np
import pymbolic.primitives as p
from pymbolic.mapper import Mapper
from pymbolic.mapper.evaluator import evaluate

from ...schemas.activation import ActivationKind, ActivationSpec
from ...schemas.perf import CostProfile, OpCounts
from ..activation_core import eval_grad_batch

logger = logging.getLogger(__name__)

x = p.Variable("x")


def _math(name: str, arg) -> p.Call:
    return p.Call(p.Lookup(p.Variable("math"), name), (arg,))


def tanh(arg) -> p.Call:
    return _math("tanh", arg)


def exp(arg) -> p.Call:
    return _math("exp", arg)


def expm1(arg) -> p.Call:
    return _math("expm1", arg)


def log1p(arg) -> p.Call:
    return _math("log1p", arg)


def neg(arg) -> p.Product:
    return p.Product((-1, arg))


def one_minus(arg) -> p.Sum:
    return p.Sum((1, neg(arg)))


def positive(arg) -> p.Comparison:
    return p.Comparison(arg, ">", 0)


# name -> categories charged for one call
CALL_COSTS: dict[str, tuple[str, ...]] = {
    "tanh": ("tanh",),
    "exp": ("exp",),
    "expm1": ("exp", "add"),
    "log": ("log",),
    "log1p": ("log", "add"),
}


class OperationCounter(Mapper):
    """Counts operations by category; each CommonSubexpression contributes once.

    Use a fresh counter per tree.
    """

    def __init__(self) -> None:
        super().__init__()
        self.cse_seen_set: set[p.CommonSubexpression] = set()

    def map_constant(self, expr) -> Counter:
        return Counter()

    def map_variable(self, expr: p.Variable) -> Counter:
        return Counter()

    def map_lookup(self, expr: p.Lookup) -> Counter:
        return Counter()

    def map_sum(self, expr: p.Sum) -> Counter:
        counts = Counter(add=len(expr.children) - 1)
        for child in expr.children:
            counts += self.rec(child)
        return counts

    def map_product(self, expr: p.Product) -> Counter:
        # a factor of -1 is a sign flip, not a multiplication
        factors = [ch for ch in expr.children if not (isinstance(ch, (int, float)) and ch == -1)]
        counts = Counter(mul=max(len(factors) - 1, 0))
        for child in factors:
            counts += self.rec(child)
        return counts

    def map_quotient(self, expr: p.Quotient) -> Counter:
        return Counter(div=1) + self.rec(expr.numerator) + self.rec(expr.denominator)

    def map_power(self, expr: p.Power) -> Counter:
        if not (isinstance(expr.exponent, int) and expr.exponent >= 1):
            raise ValueError(f"Only positive integer powers are modelled, got {expr.exponent!r}")
        return Counter(mul=expr.exponent - 1) + self.rec(expr.base)

    def map_call(self, expr: p.Call) -> Counter:
        name = expr.function.name
        if name not in CALL_COSTS:
            raise ValueError(f"No cost entry for function {name!r}")
        counts = Counter(CALL_COSTS[name])
        for param in expr.parameters:
            counts += self.rec(param)
        return counts

    def map_comparison(self, expr: p.Comparison) -> Counter:
        return Counter(cmp=1) + self.rec(expr.left) + self.rec(expr.right)

    def map_if(self, expr: p.If) -> Counter:
        # only one branch executes per element; charge the dearer one per category
        return self.rec(expr.condition) + (self.rec(expr.then) | self.rec(expr.else_))

    def map_common_subexpression(self, expr: p.CommonSubexpression) -> Counter:
        if expr in self.cse_seen_set:
            return Counter()
        self.cse_seen_set.add(expr)
        return self.rec(expr.child)


def _to_op_counts(counts: Counter) -> OpCounts:
    return OpCounts(
        transcendental_tanh=counts["tanh"],
        transcendental_exp=counts["exp"],
        transcendental_log=counts["log"],
        divisions=counts["div"],
        multiplications=counts["mul"],
        additions=counts["add"],
        comparisons=counts["cmp"],
    )


def count_expression(expr) -> OpCounts:
    return _to_op_counts(OperationCounter()(expr))


def expression_trees(spec: ActivationSpec) -> tuple[p.Expression, p.Expression]:
    """Canonical ``(forward, derivative)`` trees of ``spec``."""
    kind = spec.kind

    if kind is ActivationKind.SIGMOID:
        s = p.CommonSubexpression(p.Quotient(1, p.Sum((1, exp(neg(x))))))
        return s, p.Product((s, one_minus(s)))

    if kind is ActivationKind.TANH:
        t = p.CommonSubexpression(tanh(x))
        return t, one_minus(p.Product((t, t)))

    if kind is ActivationKind.RELU:
        return p.If(positive(x), x, 0), p.If(positive(x), 1, 0)

    if kind is ActivationKind.LEAKY_RELU:
        a = spec.leak_alpha
        return p.If(positive(x), x, p.Product((a, x))), p.If(positive(x), 1, a)

    if kind is ActivationKind.ELU:
        a = spec.elu_alpha
        branch = p.CommonSubexpression(p.Product((a, expm1(x))))
        return p.If(positive(x), x, branch), p.If(positive(x), 1, p.Sum((branch, a)))

    if kind is ActivationKind.SWISH:
        rho = spec.swish_rho
        z = x if rho == 1.0 else p.CommonSubexpression(p.Product((rho, x)))
        s = p.CommonSubexpression(p.Quotient(1, p.Sum((1, exp(neg(z))))))
        return p.Product((x, s)), p.Sum((s, p.Product((z, s, one_minus(s)))))

    if kind is ActivationKind.MISH:
        sp = p.CommonSubexpression(log1p(exp(x)))
        t = p.CommonSubexpression(tanh(sp))
        gate = neg(expm1(neg(sp)))
        return p.Product((x, t)), p.Sum((t, p.Product((x, one_minus(p.Product((t, t))), gate))))

    if kind is ActivationKind.APTX:
        alpha, beta, gamma = spec.aptx_alpha, spec.aptx_beta, spec.aptx_gamma
        z = x if beta == 1.0 else p.CommonSubexpression(p.Product((beta, x)))
        t = p.CommonSubexpression(tanh(z))
        forward = p.Product((p.Sum((alpha, t)), gamma, x))
        derivative = p.Product((gamma, p.Sum((alpha, t, p.Product((z, one_minus(p.Product((t, t)))))))))
        return forward, derivative

    raise ValueError(f"No expression tree for {kind!r}")


def mish_closed_form_tree() -> p.Expression:
    """The closed-form MISH derivative as a quotient of exponentials of x, 2x and 3x."""
    e1 = p.CommonSubexpression(exp(x))
    e2 = p.CommonSubexpression(exp(p.Product((2, x))))
    e3 = exp(p.Product((3, x)))
    numerator = p.Product(
        (
            e1,
            p.Sum(
                (
                    p.Product((4, p.Sum((x, 1)))),
                    p.Product((4, e2)),
                    e3,
                    p.Product((e1, p.Sum((p.Product((4, x)), 6)))),
                )
            ),
        )
    )
    denominator = p.Power(p.Sum((p.Product((2, e1)), e2, 2)), 2)
    return p.Quotient(numerator, denominator)


def count_ops(spec: ActivationSpec) -> CostProfile:
    forward, derivative = expression_trees(spec)
    return CostProfile(
        spec=spec,
        label=spec.label,
        forward=count_expression(forward),
        derivative=count_expression(derivative),
    )


def count_mish_closed_form() -> OpCounts:
    return count_expression(mish_closed_form_tree())


def audit_expression(spec: ActivationSpec, xs: list[float]) -> float:
    """Largest deviation between the canonical trees (evaluated by pymbolic) and the kernels."""
    forward, derivative = expression_trees(spec)
    values, grads = eval_grad_batch(spec, np.asarray(xs, dtype=np.float64))
    worst = 0.0
    for x_value, value, grad in zip(xs, values, grads):
        context = {"x": float(x_value), "math": math}
        worst = max(
            worst,
            abs(float(evaluate(forward, context)) - float(value)),
            abs(float(evaluate(derivative, context)) - float(grad)),
        )
    logger.debug(f"expression audit for {spec.label}: max deviation {worst:.3e}")
    return worst
