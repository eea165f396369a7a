"""Named braid words shipped with the package, in a small TSV format.

Each line is ``name<TAB>n<TAB>word<TAB>components[<TAB>expected]``; blank
lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Union

from .braid import BraidWord, ParseError


class CatalogError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    word: BraidWord
    components: int
    expected: Optional[str] = None

    @property
    def strands(self) -> int:
        return self.word.strands

    def to_line(self) -> str:
        fields = [self.name, str(self.strands), self.word.format(), str(self.components)]
        if self.expected is not None:
            fields.append(self.expected)
        return "\t".join(fields)


def parse_catalog(text: str) -> List[CatalogEntry]:
    entries = []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) not in (4, 5):
            raise CatalogError(f"expected 4 or 5 tab-separated fields, got {len(fields)}", lineno)
        name, n_text, word_text, comp_text = (f.strip() for f in fields[:4])
        expected = fields[4].strip() if len(fields) == 5 else None
        if not name or name in seen:
            raise CatalogError(f"missing or duplicate name {name!r}", lineno)
        try:
            n = int(n_text)
            components = int(comp_text)
        except ValueError:
            raise CatalogError("strand and component counts must be integers", lineno) from None
        try:
            w = BraidWord.parse(word_text, strands=n)
        except (ParseError, ValueError) as exc:
            raise CatalogError(str(exc), lineno) from None
        if w.closure_components() != components:
            raise CatalogError(
                f"{name} closes to {w.closure_components()} components, catalog says {components}", lineno)
        seen.add(name)
        entries.append(CatalogEntry(name, w, components, expected))
    return entries


def load_catalog(path: Optional[Union[str, Path]] = None) -> List[CatalogEntry]:
    if path is None:
        text = resources.files(__package__).joinpath("data/catalog.tsv").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_catalog(text)


def lookup(name: str, path: Optional[Union[str, Path]] = None) -> Optional[CatalogEntry]:
    for entry in load_catalog(path):
        if entry.name == name:
            return entry
    return None
