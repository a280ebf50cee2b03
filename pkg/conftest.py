"""
Pytest collection wiring for the standalone script test suites.

The suites (run_tests.py, tests/*_tests.py) are self-running scripts that
execute at import time and finish with sys.exit(). Each one is collected as a
single pytest item that runs the script in a subprocess and fails if the
script exits non-zero.
"""

import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).parent


def _is_script_suite(path: Path) -> bool:
    if path.suffix != ".py":
        return False
    if path.parent == ROOT and path.name == "run_tests.py":
        return True
    return path.parent == ROOT / "tests" and path.name.endswith("_tests.py")


def pytest_collect_file(parent, file_path):
    if _is_script_suite(Path(file_path)):
        return ScriptSuite.from_parent(parent, path=file_path)
    return None


class ScriptSuite(pytest.File):
    def collect(self):
        yield ScriptItem.from_parent(self, name=self.path.name)


class ScriptItem(pytest.Item):
    def runtest(self):
        proc = subprocess.run(
            [sys.executable, str(self.path)],
            cwd=str(ROOT),
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            raise ScriptFailure(proc)

    def repr_failure(self, excinfo):
        if isinstance(excinfo.value, ScriptFailure):
            proc = excinfo.value.proc
            return f"exit code {proc.returncode}\n{proc.stdout}\n{proc.stderr}"
        return super().repr_failure(excinfo)

    def reportinfo(self):
        return self.path, None, f"script suite: {self.path.name}"


class ScriptFailure(Exception):
    def __init__(self, proc):
        super().__init__(proc.returncode)
        self.proc = proc
