"""Locating shipped assets: seed catalog, decks, stop-word list.

The catalog and decks live at the repository root (``catalog/``, ``decks/``)
so they can be edited as plain files; this module finds them by walking up
from the package directory, which covers source checkouts and editable
installs.  The stop-word list is packaged data and always available.
"""

from __future__ import annotations

from importlib import resources as _importlib_resources
from pathlib import Path

_MARKER = Path("catalog") / "seed.catalog.json"


def repo_root() -> Path | None:
    """Nearest ancestor directory that contains catalog/seed.catalog.json."""
    here = Path(__file__).resolve()
    for candidate in here.parents:
        if (candidate / _MARKER).is_file():
            return candidate
    return None


def default_catalog_path() -> Path:
    root = repo_root()
    if root is None:
        raise FileNotFoundError(
            "seed catalog not found; pass an explicit --catalog path "
            "(expected <repo>/catalog/seed.catalog.json)"
        )
    return root / _MARKER


def default_deck_paths() -> list[Path]:
    root = repo_root()
    if root is None or not (root / "decks").is_dir():
        return []
    return sorted((root / "decks").glob("*.json"))


def parse_stopword_text(text: str) -> frozenset[str]:
    """One token per line; blank lines and ``#`` comments ignored."""
    tokens = set()
    for line in text.splitlines():
        token = line.split("#", 1)[0].strip().lower()
        if token:
            tokens.add(token)
    return frozenset(tokens)


def load_stopwords() -> frozenset[str]:
    text = (_importlib_resources.files("xcboard") / "data" / "stopwords.txt").read_text("utf-8")
    return parse_stopword_text(text)
