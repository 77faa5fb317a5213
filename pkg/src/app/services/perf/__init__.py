from .benchmark import bench_suite, bench_throughput, make_input, render_table
from .cost_model import audit_expression, count_mish_closed_form, count_ops, expression_trees

__all__ = [
    "audit_expression",
    "bench_suite",
    "bench_throughput",
    "count_mish_closed_form",
    "count_ops",
    "expression_trees",
    "make_input",
    "render_table",
]
