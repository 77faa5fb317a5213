from pathlib import Path

import pytest
from faker import Faker

from src.app.schemas.activation import ActivationKind, ActivationSpec

fake = Faker()
Faker.seed(20240)


@pytest.fixture
def aptx() -> ActivationSpec:
    """APTx(1, 1, 1/2), the MISH-like default."""
    return ActivationSpec(kind=ActivationKind.APTX)


@pytest.fixture
def aptx_half_beta() -> ActivationSpec:
    """APTx(1, 1/2, 1/2), identical to SWISH with rho = 1."""
    return ActivationSpec(kind=ActivationKind.APTX, aptx_beta=0.5)


@pytest.fixture
def mish() -> ActivationSpec:
    return ActivationSpec(kind=ActivationKind.MISH)


@pytest.fixture
def default_specs() -> list[ActivationSpec]:
    """One spec per kind with default parameters."""
    return [ActivationSpec(kind=kind) for kind in ActivationKind]


@pytest.fixture
def random_aptx() -> ActivationSpec:
    """APTx with Faker-drawn parameters, beta and gamma bounded away from zero."""
    return ActivationSpec(
        kind=ActivationKind.APTX,
        aptx_alpha=fake.pyfloat(min_value=-2.0, max_value=2.0),
        aptx_beta=fake.pyfloat(min_value=0.1, max_value=3.0),
        aptx_gamma=fake.pyfloat(min_value=0.1, max_value=2.0),
    )


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    return tmp_path / "artifacts"
