from pathlib import Path

import pytest

from paircheck import parse

REPO_ROOT = Path(__file__).resolve().parent.parent
PROGRAMS_DIR = REPO_ROOT / "programs"


def program_paths() -> list[Path]:
    return sorted(PROGRAMS_DIR.glob("*.toy"))


def load_program(name: str):
    return parse((PROGRAMS_DIR / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def ab12():
    return load_program("ab12.toy")


@pytest.fixture(scope="session")
def bundled_programs():
    return {path.name: parse(path.read_text(encoding="utf-8")) for path in program_paths()}
