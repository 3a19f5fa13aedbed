from __future__ import annotations

import pytest

from charts import load


@pytest.fixture
def intro_chart():
    return load("intro.sseq")


@pytest.fixture
def d2_chart():
    return load("d2_example.sseq")
