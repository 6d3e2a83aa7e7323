from __future__ import annotations

import pytest

from pathgames import fixtures


@pytest.fixture
def fig1_pm():
    return fixtures.fig1_pm()


@pytest.fixture
def fig1_p():
    return fixtures.fig1_p()


@pytest.fixture
def g2():
    return fixtures.g2()


@pytest.fixture
def g3s():
    return fixtures.g3s()


@pytest.fixture
def g6():
    return fixtures.g6()


@pytest.fixture
def g6s():
    return fixtures.g6s()


@pytest.fixture
def chain():
    return fixtures.chain()
