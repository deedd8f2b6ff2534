from pathlib import Path

import pytest

from main import PropertyOSystem
from table_parser import parse_table

DATASETS_DIR = Path(__file__).resolve().parent.parent / "datasets"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

CASE_NAMES = ["case1_n3", "case2", "case5"]
PROJECTIVE_NAMES = ["p1", "p2", "p3", "p4", "p5"]


def load_bundled(name: str):
    return parse_table((DATASETS_DIR / f"{name}.txt").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def system():
    return PropertyOSystem(str(DATASETS_DIR))


@pytest.fixture(params=CASE_NAMES)
def case_table(request):
    return load_bundled(request.param)


@pytest.fixture
def p2_text():
    return (DATASETS_DIR / "p2.txt").read_text(encoding="utf-8")


@pytest.fixture
def write_table(tmp_path):
    """Write table text to a temporary file and return its path as a string"""
    def _write(text: str, name: str = "table.txt") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write
