import os
import pathlib
import shutil

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("BKW_CLI") or shutil.which("bkw")
    if not path:
        pytest.skip("bkw executable not available")
    return path


@pytest.fixture(scope="session")
def schema_dir():
    return ROOT / "schemas"
