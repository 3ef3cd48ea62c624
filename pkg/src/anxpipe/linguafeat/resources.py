"""Resource bundle: wordlists, scalar and affect lexicons, n-gram tables.

On-disk layout under a resources directory::

    wordlists/<name>.txt   one lowercase word per line
    scalar/<name>.tsv      word<TAB>value
    affect/<name>.tsv      word<TAB>cat1=v1,cat2=v2,...
    ngrams/<any>.tsv       n<TAB>genre<TAB>ngram(space-joined)<TAB>logfreq

All lookups are case-insensitive (keys are lowercased at load). A word
missing from a scalar or affect lexicon is simply unmatched; a word missing
from a wordlist is out of the list. Affect categories are ordered
lexicographically within each lexicon, and lexicons lexicographically by
name, which fixes the registry's feature order.

A tiny sample bundle ships with the package (``anxpipe/data/sample_resources``);
full-size proprietary resources (COCA tables, LIWC) are user-supplied in the
same formats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

__all__ = ["AffectLexicon", "ResourceBundle", "ResourceError", "load_resources", "GENRES", "sample_resources_path"]

GENRES = ("spoken", "fiction", "magazine", "news", "academic")
MAX_NGRAM = 5


class ResourceError(ValueError):
    """Malformed resource file or missing table."""


@dataclass(frozen=True)
class AffectLexicon:
    name: str
    categories: tuple[str, ...]
    scores: dict[str, tuple[float, ...]]  # word -> per-category vector


@dataclass
class ResourceBundle:
    wordlists: dict[str, frozenset] = field(default_factory=dict)
    scalar_lexicons: dict[str, dict[str, float]] = field(default_factory=dict)
    affect_lexicons: dict[str, AffectLexicon] = field(default_factory=dict)
    ngram_tables: dict[str, dict[str, float]] = field(default_factory=dict)
    ngram_floor: float = 0.0

    def wordlist(self, name: str) -> frozenset:
        return self.wordlists.get(name, frozenset())

    def scalar(self, name: str) -> dict[str, float]:
        return self.scalar_lexicons.get(name, {})

    def ngram_table(self, genre: str) -> dict[str, float]:
        if genre not in self.ngram_tables:
            raise ResourceError(f"missing n-gram table for genre {genre!r}")
        return self.ngram_tables[genre]

    def prevalence_category_names(self) -> list[str]:
        return sorted(n for n in self.scalar_lexicons if n.startswith("prevcat_"))


def _read_wordlist(path: Path) -> frozenset:
    words = set()
    for line in path.read_text("utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def _read_scalar(path: Path) -> dict[str, float]:
    table: dict[str, float] = {}
    for line_no, line in enumerate(path.read_text("utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ResourceError(f"{path.name} line {line_no}: expected word<TAB>value")
        try:
            table[parts[0].strip().lower()] = float(parts[1])
        except ValueError as exc:
            raise ResourceError(f"{path.name} line {line_no}: bad value {parts[1]!r}") from exc
    return table


def _read_affect(path: Path) -> AffectLexicon:
    raw: dict[str, dict[str, float]] = {}
    categories: set[str] = set()
    for line_no, line in enumerate(path.read_text("utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ResourceError(f"{path.name} line {line_no}: expected word<TAB>cat=v,...")
        word = parts[0].strip().lower()
        entry: dict[str, float] = {}
        for pair in parts[1].split(","):
            if not pair.strip():
                continue
            if "=" not in pair:
                raise ResourceError(f"{path.name} line {line_no}: bad pair {pair!r}")
            cat, value = pair.split("=", 1)
            try:
                entry[cat.strip()] = float(value)
            except ValueError as exc:
                raise ResourceError(f"{path.name} line {line_no}: bad value {value!r}") from exc
        raw[word] = entry
        categories.update(entry)
    cats = tuple(sorted(categories))
    scores = {
        word: tuple(entry.get(c, 0.0) for c in cats) for word, entry in raw.items()
    }
    return AffectLexicon(name=path.stem, categories=cats, scores=scores)


def _read_ngrams(path: Path, tables: dict[str, dict[str, float]]) -> None:
    for line_no, line in enumerate(path.read_text("utf-8").splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ResourceError(
                f"{path.name} line {line_no}: expected n<TAB>genre<TAB>ngram<TAB>logfreq"
            )
        n_str, genre, ngram, logfreq = parts
        try:
            n = int(n_str)
            value = float(logfreq)
        except ValueError as exc:
            raise ResourceError(f"{path.name} line {line_no}: bad number") from exc
        if not 1 <= n <= MAX_NGRAM:
            raise ResourceError(f"{path.name} line {line_no}: n={n} outside [1,{MAX_NGRAM}]")
        ngram = " ".join(ngram.lower().split())
        if ngram.count(" ") + 1 != n:
            raise ResourceError(f"{path.name} line {line_no}: ngram arity != n")
        tables.setdefault(genre, {})[ngram] = value


def load_resources(root) -> ResourceBundle:
    root = Path(root)
    if not root.is_dir():
        raise ResourceError(f"resource directory {root} does not exist")
    bundle = ResourceBundle()
    wl_dir = root / "wordlists"
    if wl_dir.is_dir():
        for path in sorted(wl_dir.glob("*.txt")):
            bundle.wordlists[path.stem.lower()] = _read_wordlist(path)
    sc_dir = root / "scalar"
    if sc_dir.is_dir():
        for path in sorted(sc_dir.glob("*.tsv")):
            bundle.scalar_lexicons[path.stem.lower()] = _read_scalar(path)
    af_dir = root / "affect"
    if af_dir.is_dir():
        for path in sorted(af_dir.glob("*.tsv")):
            bundle.affect_lexicons[path.stem.lower()] = _read_affect(path)
    ng_dir = root / "ngrams"
    if ng_dir.is_dir():
        for path in sorted(ng_dir.glob("*.tsv")):
            _read_ngrams(path, bundle.ngram_tables)
    return bundle


def sample_resources_path() -> Path:
    """Path of the sample bundle shipped inside the package."""
    from importlib import resources

    return Path(str(resources.files("anxpipe").joinpath("data/sample_resources")))
