import contextlib
import io
from importlib.resources import files

import pytest
from hypothesis import HealthCheck, settings

from detsing.cli import main

settings.register_profile(
    "suite",
    max_examples=60,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def fixture_path(name):
    return str(files("detsing") / "fixtures" / name)


@pytest.fixture
def run_cli():
    def run(*argv):
        out = io.StringIO()
        err = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            try:
                code = main([str(a) for a in argv])
            except SystemExit as stop:
                code = stop.code if isinstance(stop.code, int) else 2
        return code, out.getvalue(), err.getvalue()

    return run
