"""Corpus loading, text normalization, tokenization and chunking."""

from __future__ import annotations

import functools
import json
import logging
import sys
import unicodedata
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DuplicateCategory, EmptyDocument, ManifestError, PathNotFound

log = logging.getLogger(__name__)

LABELS = ("legal", "general", "generated", "other")
DEFAULT_CHUNK_SIZE = 300_000
MIN_TAIL_FRACTION = 0.5
_REPLACEMENT_UTF8 = "�".encode("utf-8")


@dataclass(frozen=True)
class NormalizeOptions:
    case_fold: bool = True
    strip_punctuation: bool = True


@dataclass(frozen=True)
class TokenSequence:
    """Immutable normalized token stream for one document or chunk.

    ``n_replaced`` counts invalid UTF-8 sequences that were replaced while
    decoding the source bytes.
    """

    tokens: tuple[str, ...]
    source_id: str = ""
    n_replaced: int = 0

    def __post_init__(self):
        if not isinstance(self.tokens, tuple):
            object.__setattr__(self, "tokens", tuple(self.tokens))
        if not all(self.tokens):
            raise ValueError("token sequence contains an empty token")

    def __len__(self) -> int:
        return len(self.tokens)

    @cached_property
    def normalized_bytes(self) -> bytes:
        """Tokens joined by single spaces, UTF-8 encoded."""
        return " ".join(self.tokens).encode("utf-8")

    @property
    def byte_length(self) -> int:
        return len(self.normalized_bytes)

    @cached_property
    def encoded(self) -> tuple[np.ndarray, tuple[str, ...]]:
        """Integer ids in order of first occurrence, and the matching vocabulary.

        Token ``i`` is new exactly when ``ids[i]`` exceeds every earlier id,
        so the running vocabulary size is ``maximum.accumulate(ids) + 1``.
        """
        vocab = tuple(dict.fromkeys(self.tokens))
        index = {t: i for i, t in enumerate(vocab)}
        ids = np.fromiter(map(index.__getitem__, self.tokens), dtype=np.int64, count=len(self.tokens))
        return ids, vocab

    @property
    def n_types(self) -> int:
        return len(self.encoded[1])

    def counts(self) -> np.ndarray:
        """Occurrence count per type, indexed like ``encoded[1]``."""
        ids, vocab = self.encoded
        return np.bincount(ids, minlength=len(vocab))


@dataclass(frozen=True)
class Chunk:
    tokens: TokenSequence
    index: int
    target_size: int

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Category:
    name: str
    paths: tuple[Path, ...]
    label: str = "other"

    def files(self) -> list[Path]:
        """Files of this category in manifest order; directories expand to their sorted ``*.txt``."""
        out: list[Path] = []
        for p in self.paths:
            if p.is_dir():
                out.extend(sorted(f for f in p.rglob("*.txt") if f.is_file()))
            else:
                out.append(p)
        return out


@dataclass(frozen=True)
class CorpusManifest:
    categories: tuple[Category, ...]
    source: Path | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.categories:
            raise ManifestError("manifest lists no categories")
        seen = set()
        for c in self.categories:
            if c.name in seen:
                raise DuplicateCategory(f"duplicate category {c.name!r}")
            seen.add(c.name)

    def __getitem__(self, name: str) -> Category:
        for c in self.categories:
            if c.name == name:
                return c
        raise KeyError(name)


def load_manifest(path: str | Path) -> CorpusManifest:
    """Read a JSON manifest; relative paths resolve against the manifest's directory.

    Expected layout::

        {"categories": [{"name": "statute", "paths": ["a.txt", "dir/"], "label": "legal"}]}
    """
    path = Path(path)
    if not path.is_file():
        raise PathNotFound(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ManifestError(f"{path}: invalid JSON ({e})") from e
    if not isinstance(doc, dict) or not isinstance(doc.get("categories"), list):
        raise ManifestError(f"{path}: expected a top-level 'categories' array")

    base = path.resolve().parent
    categories = []
    for entry in doc["categories"]:
        try:
            name = entry["name"]
            raw_paths = entry["paths"]
        except (KeyError, TypeError) as e:
            raise ManifestError(f"{path}: category entry needs 'name' and 'paths'") from e
        label = entry.get("label", "other")
        if label not in LABELS:
            raise ManifestError(f"{path}: category {name!r} has unknown label {label!r}")
        if isinstance(raw_paths, str):
            raw_paths = [raw_paths]
        resolved = []
        for p in raw_paths:
            p = Path(p)
            p = (p if p.is_absolute() else base / p).resolve()
            if not p.exists():
                raise PathNotFound(f"category {name!r}: {p} does not exist")
            resolved.append(p)
        categories.append(Category(name=name, paths=tuple(resolved), label=label))
    return CorpusManifest(categories=tuple(categories), source=path.resolve())


@functools.lru_cache(maxsize=1)
def _punctuation_table() -> dict[int, None]:
    return {
        cp: None
        for cp in range(sys.maxunicode + 1)
        if unicodedata.category(chr(cp)).startswith("P")
    }


def tokenize(raw: bytes | str, options: NormalizeOptions = NormalizeOptions()) -> tuple[list[str], int]:
    """Return ``(tokens, n_replaced)`` without the empty-document check."""
    if isinstance(raw, str):
        text, n_replaced = raw, 0
    else:
        text = raw.decode("utf-8", errors="replace")
        # U+FFFD already present in the input is valid and must not be counted.
        n_replaced = text.count("�") - raw.count(_REPLACEMENT_UTF8)
    if options.case_fold:
        text = text.lower()
    if options.strip_punctuation:
        text = text.translate(_punctuation_table())
    return text.split(), n_replaced


def normalize_and_tokenize(
    raw: bytes | str,
    options: NormalizeOptions = NormalizeOptions(),
    source_id: str = "",
) -> TokenSequence:
    """Decode, lowercase, drop Unicode punctuation (P* categories) and split on whitespace.

    Punctuation characters are deleted rather than replaced by a space, so
    ``don't`` becomes ``dont`` and ``self-evident`` becomes ``selfevident``.
    """
    tokens, n_replaced = tokenize(raw, options)
    if not tokens:
        raise EmptyDocument(f"no tokens in {source_id or 'input'}")
    if n_replaced:
        log.warning("%s: replaced %d invalid UTF-8 sequences", source_id or "input", n_replaced)
    return TokenSequence(tuple(tokens), source_id=source_id, n_replaced=n_replaced)


def read_document(path: str | Path, options: NormalizeOptions = NormalizeOptions()) -> TokenSequence:
    path = Path(path)
    if not path.is_file():
        raise PathNotFound(f"{path} does not exist")
    return normalize_and_tokenize(path.read_bytes(), options, source_id=str(path))


def concatenate(seqs: Iterable[TokenSequence], source_id: str = "") -> TokenSequence:
    seqs = list(seqs)
    tokens: list[str] = []
    for s in seqs:
        tokens.extend(s.tokens)
    if not tokens:
        raise EmptyDocument(f"no tokens in {source_id or 'input'}")
    return TokenSequence(
        tuple(tokens),
        source_id=source_id,
        n_replaced=sum(s.n_replaced for s in seqs),
    )


def split_sizes(n: int, target: int, min_tail_fraction: float = MIN_TAIL_FRACTION) -> tuple[list[int], int]:
    """Chunk lengths for ``n`` tokens and the number of tail tokens dropped."""
    if target < 1:
        raise ValueError("chunk target must be >= 1")
    full, tail = divmod(n, target)
    sizes = [target] * full
    if tail and tail >= min_tail_fraction * target:
        sizes.append(tail)
        tail = 0
    return sizes, tail


def chunk(
    seq: TokenSequence,
    target: int = DEFAULT_CHUNK_SIZE,
    min_tail_fraction: float = MIN_TAIL_FRACTION,
) -> list[Chunk]:
    """Cut ``seq`` into consecutive chunks of ``target`` tokens.

    A final partial chunk is kept only when it holds at least
    ``min_tail_fraction * target`` tokens; otherwise it is dropped and logged.
    """
    sizes, dropped = split_sizes(len(seq), target, min_tail_fraction)
    if dropped:
        log.info("%s: dropped %d-token tail (< %.0f%% of %d)",
                 seq.source_id or "input", dropped, 100 * min_tail_fraction, target)
    chunks = []
    start = 0
    for i, size in enumerate(sizes):
        piece = TokenSequence(seq.tokens[start:start + size], source_id=f"{seq.source_id}#{i}")
        chunks.append(Chunk(tokens=piece, index=i, target_size=target))
        start += size
    return chunks


def load_category(
    category: Category, options: NormalizeOptions = NormalizeOptions()
) -> list[TokenSequence]:
    """Tokenize every file of a category, in manifest order."""
    return [read_document(p, options) for p in category.files()]

