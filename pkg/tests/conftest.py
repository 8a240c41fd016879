import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from isoclean import _backend  # noqa: E402
from isoclean.volume import VolumeGrid, load_volume  # noqa: E402

DATA_DIR = Path(os.environ.get("ISOCLEAN_DATA", Path(__file__).parent.parent / "data"))


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per importable kernel backend."""
    previous = _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


def find_dataset(*names):
    """Locate ``name.nhdr`` or ``name_NXxNYxNZ_type.raw`` under the data dir."""
    if not DATA_DIR.is_dir():
        return None
    for name in names:
        header = DATA_DIR / f"{name}.nhdr"
        if header.exists():
            return header
        for path in sorted(DATA_DIR.glob(f"{name}_*x*x*_*.raw")):
            return path
    return None


_cache = {}


def load_dataset(name, aliases=()):
    path = find_dataset(name, *aliases)
    if path is None:
        pytest.skip(f"{name} volume not found in {DATA_DIR} (set ISOCLEAN_DATA)")
    if path not in _cache:
        _cache[path] = load_volume(path)
    return _cache[path]


def random_grid(rng, max_dim=8, integer=True):
    dims = tuple(int(d) for d in rng.integers(1, max_dim + 1, size=3))
    n = dims[0] * dims[1] * dims[2]
    if integer:
        samples = rng.integers(0, 10, size=n).astype(np.float64)
    else:
        samples = rng.normal(size=n)
    return VolumeGrid(dims, samples)


# One pass/fail line per acceptance criterion in the terminal summary.
_criteria = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        detail = ""
        if report.outcome == "skipped" and isinstance(report.longrepr, tuple):
            detail = f" ({report.longrepr[2]})"
        _criteria[report.nodeid.split("::")[-1]] = status + detail


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, status in _criteria.items():
        terminalreporter.write_line(f"{status.split(' ')[0]:4}  {name}{status[4:]}")
