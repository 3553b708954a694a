import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from deepmorph.experiment.synth import SynthParams, generate_corpus  # noqa: E402

SMALL = SynthParams(subjects=4, originals=3, enroll=1, attacks=2, frames=5, size=16, margin=2, embedding_dim=16)


@pytest.fixture(scope="session")
def small_corpus(tmp_path_factory):
    """Path of a tiny generated corpus manifest, shared by the session."""
    return generate_corpus(tmp_path_factory.mktemp("corpus"), SMALL)


GATE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def gate(request):
    """Collects one PASS/FAIL line per acceptance criterion."""
    return request.config.stash.setdefault(GATE, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(GATE, [])
    if lines:
        terminalreporter.section("acceptance")
        for line in lines:
            terminalreporter.write_line(line)
