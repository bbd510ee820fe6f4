"""Shared fixtures."""

import math

import pytest

from kacbaker.model import ModelParams

LN2 = math.log(2.0)


@pytest.fixture
def half() -> ModelParams:
    return ModelParams(0.5)


@pytest.fixture
def third() -> ModelParams:
    return ModelParams(0.3)


@pytest.fixture(params=[0.3, 0.5, 0.7], ids=lambda lam: f"lam={lam}")
def params(request) -> ModelParams:
    return ModelParams(request.param)
