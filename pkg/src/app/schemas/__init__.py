from .activation import ActivationKind, ActivationSpec, ValueGrad
from .analysis import DerivativeDiagnostics, DomainMetrics, ErrorReport, EvalSeries, PiecewiseApproximant
from .calculus import DiffConfig, MinResult
from .manifest import RunManifest
from .perf import BenchMode, CostProfile, OpCounts, Precision, ThroughputReport
from .training import DatasetName, EpochRecord, EpochTimeComparison, LossName, TrainConfig, TrainReport
from .verification import CheckResult, VerifyReport
