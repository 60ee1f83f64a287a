import subprocess
import sys
import time
from pathlib import Path

import pytest

# every figure preset plus the preset-less commands at their defaults
PRESET_RUNS = (
    ("passive-heat",),
    ("photonic", "--preset", "fig4"),
    ("photonic", "--preset", "fig6"),
    ("photonic", "--preset", "fig7"),
    ("subthz", "--preset", "fig10"),
    ("nonlinearity", "--preset", "fig9"),
    ("fom", "--preset", "fig11"),
    ("project", "--preset", "fig12"),
)


def run_cli(*args, out: Path | None = None, check=True) -> subprocess.CompletedProcess:
    cmd = [sys.executable, "-m", "cryolink", *args]
    if out is not None:
        cmd += ["--out", str(out)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"{' '.join(args)} exited {proc.returncode}: {proc.stderr}")
    return proc


def run_preset_suite(directory: Path) -> tuple[dict[str, bytes], float]:
    outputs = {}
    start = time.perf_counter()
    for args in PRESET_RUNS:
        name = "_".join(a.lstrip("-") for a in args) + ".csv"
        path = directory / name
        run_cli(*args, out=path)
        outputs[name] = path.read_bytes()
    return outputs, time.perf_counter() - start


_ACCEPTANCE: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE[label] = "PASS" if report.passed else "FAIL"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{_ACCEPTANCE[label]}  {label}")
