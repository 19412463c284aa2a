import pytest

from src.models.numeration import BaseSpec, words_from_digits
from src.utils.generators import hammersley


class SilentDebug:
    """Stands in for the logging module and records what was logged."""

    def __init__(self):
        self.records = []

    def _log(self, level, msg):
        self.records.append((level, msg))

    def debug(self, msg):
        self._log("debug", msg)

    def info(self, msg):
        self._log("info", msg)

    def warning(self, msg):
        self._log("warning", msg)

    def error(self, msg):
        self._log("error", msg)


@pytest.fixture
def debug():
    return SilentDebug()


@pytest.fixture
def phi():
    return BaseSpec.phi()


@pytest.fixture
def silver():
    """1 + sqrt(2), the base p=2, q=1."""
    return BaseSpec(2, 1)


@pytest.fixture
def word(phi):
    def make(text, base=None):
        return words_from_digits(base or phi, text)
    return make


@pytest.fixture
def h3(phi):
    return hammersley(phi, 3)

