"""Loading of the shipped matrix fixtures.

Fixtures live in ``<base>/p<prime>/<name>.mat`` in the matrix text format.
"""

from __future__ import annotations

from pathlib import Path

from .exactlin import IntMatrix, MatrixFormatError

DEFAULT_BASE = Path(__file__).resolve().parent / "fixtures"


class FixtureError(Exception):
    """A fixture file is missing or malformed."""

    def __init__(self, path: Path, message: str, line: int | None = None):
        self.path = Path(path)
        self.line = line
        where = f"{self.path}:{line}" if line is not None else str(self.path)
        super().__init__(f"{where}: {message}")


def fixture_dir(p: int, base: str | Path | None = None) -> Path:
    return Path(base if base is not None else DEFAULT_BASE) / f"p{p}"


def fixture_path(name: str, p: int = 7, base: str | Path | None = None) -> Path:
    return fixture_dir(p, base) / f"{name}.mat"


def has_fixture(name: str, p: int = 7, base: str | Path | None = None) -> bool:
    return fixture_path(name, p, base).is_file()


def load_matrix(name: str, p: int = 7, base: str | Path | None = None) -> IntMatrix:
    path = fixture_path(name, p, base)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise FixtureError(path, "file not found") from None
    except OSError as exc:
        raise FixtureError(path, f"cannot read: {exc}") from None
    try:
        return IntMatrix.from_text(text)
    except MatrixFormatError as exc:
        raise FixtureError(path, exc.message, exc.line) from None


class FixtureSet:
    """Cached access to the fixtures of one prime, with in-memory overrides.

    Overrides let callers inject modified matrices (mutation tests) without
    touching files.
    """

    def __init__(self, p: int = 7, base: str | Path | None = None, overrides: dict | None = None):
        self.p = p
        self.base = base
        self._cache: dict[str, IntMatrix] = dict(overrides or {})

    def __getitem__(self, name: str) -> IntMatrix:
        if name not in self._cache:
            self._cache[name] = load_matrix(name, self.p, self.base)
        return self._cache[name]

    def get(self, name: str) -> IntMatrix | None:
        try:
            return self[name]
        except FixtureError:
            return None

    def path(self, name: str) -> Path:
        return fixture_path(name, self.p, self.base)

    def override(self, name: str, value: IntMatrix) -> None:
        self._cache[name] = value
