import pytest

from modlang import EngineConfig, ModuleRegistry
from modlang.registry import BUNDLED_DIR


@pytest.fixture
def bundled():
    """A registry that sees only the shipped modules (mf, mp, mw, mwq)."""
    return ModuleRegistry([BUNDLED_DIR])


@pytest.fixture
def cfg():
    return EngineConfig()


@pytest.fixture
def write_mod(tmp_path):
    def write(name, body, header=None):
        path = tmp_path / f"{name}.mod"
        path.write_text(f"/{header or name} =\n{body}\n", encoding="utf-8")
        return path

    return write


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(RESULTS):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} criterion {number}: {title} [{detail}]")
