"""Access to the bundled matrices, automata and closed-form fixtures.

Setting ``PERMGRID_RESOURCES`` to a directory overrides the bundled copy;
it must have the same layout (``*.matrix``, ``*.dfa`` and
``fixtures/<pipeline>/<name>.gf``).
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

from ..automata import Dfa
from ..grid import GriddingMatrix
from ..ratfun import RationalFunction, parse_rational

ENV_VAR = "PERMGRID_RESOURCES"
_BUNDLED = Path(__file__).with_name("resources")


def resource_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else _BUNDLED


def _path(name: str, suffix: str) -> Path:
    p = Path(name)
    if p.suffix == suffix and (p.is_absolute() or p.exists()):
        return p
    return resource_dir() / (name if name.endswith(suffix) else name + suffix)


@lru_cache(maxsize=None)
def _load_matrix(path: Path) -> GriddingMatrix:
    return GriddingMatrix.load(path)


def load_matrix(name: str) -> GriddingMatrix:
    """A matrix by resource name (``"B"``, ``"X"``...) or by file path."""
    return _load_matrix(_path(name, ".matrix"))


@lru_cache(maxsize=None)
def _load_dfa(path: Path) -> Dfa:
    return Dfa.load(path)


def load_dfa(name: str) -> Dfa:
    return _load_dfa(_path(name, ".dfa"))


def read_gf_text(text: str) -> RationalFunction:
    """Fixture text: ``#`` comments, then one expression, possibly split over lines."""
    body = " ".join(line.split("#", 1)[0].strip() for line in text.splitlines())
    if not body.strip():
        raise ValueError("fixture holds no expression")
    return parse_rational(body)


@lru_cache(maxsize=None)
def _load_fixture(path: Path) -> RationalFunction:
    return read_gf_text(path.read_text())


def fixture_path(pipeline: str, name: str) -> Path:
    return resource_dir() / "fixtures" / pipeline / f"{name}.gf"


def load_fixture(pipeline: str, name: str) -> RationalFunction:
    return _load_fixture(fixture_path(pipeline, name))


def has_fixture(pipeline: str, name: str) -> bool:
    return fixture_path(pipeline, name).exists()


def list_resources(suffix: str) -> list[str]:
    return sorted(p.stem for p in resource_dir().glob(f"*{suffix}"))
