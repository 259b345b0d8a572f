import os
import sys

import pytest

HERE = os.path.dirname(__file__)
ROOT = os.path.dirname(HERE)
JOBS = os.path.join(ROOT, "jobs")
sys.path.insert(0, HERE)


def job(name: str) -> str:
    return os.path.join(JOBS, name)


@pytest.fixture(scope="session")
def instance_a_result():
    """Instance A built in-process (Z/2 swap over F_5, r = 2)."""
    from gsforms.construct import PipelineParams, run_pipeline

    from catalogue import swap_copies

    return run_pipeline(swap_copies(1), PipelineParams(r=2, seed=0))


@pytest.fixture(scope="session")
def instance_a_bundle(tmp_path_factory):
    """A bundle directory written by ``gsforms construct`` on jobs/instance_a.ini."""
    from gsforms.cli import main

    out = tmp_path_factory.mktemp("bundle_a")
    assert main(["construct", "--input", job("instance_a.ini"), "--out", str(out)]) == 0
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
