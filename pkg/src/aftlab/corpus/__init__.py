"""Golden corpus: the worked-example programs, shipped as .lp files."""

from __future__ import annotations

from pathlib import Path

from ..program import Program, parse

_DIR = Path(__file__).parent


def names() -> list[str]:
    return sorted(f.stem for f in _DIR.glob("*.lp"))


def path(name: str) -> Path:
    p = _DIR / f"{name}.lp"
    if not p.exists():
        raise FileNotFoundError(f"no corpus program named {name!r}")
    return p


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def load(name: str) -> Program:
    return parse(text(name))


def programs() -> list[Program]:
    return [load(name) for name in names()]


def expected_path(name: str) -> Path:
    return _DIR / "expected" / f"{name}.json"
