"""Corpus ingestion and the labeled word-document count matrix."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

# A token is a maximal run of lowercase letters and digits; everything else
# (punctuation, hyphens, whitespace) separates tokens.
_TOKEN_RE = re.compile(r"[a-z0-9]+")


@dataclass(frozen=True)
class Document:
    """One titled document: a short id and its raw text."""

    doc_id: str
    text: str

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise ValueError("document id must be non-empty")


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of documents with unique ids."""

    documents: tuple[Document, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "documents", tuple(self.documents))
        seen = set()
        for doc in self.documents:
            if doc.doc_id in seen:
                raise ValueError(f"duplicate document id: {doc.doc_id!r}")
            seen.add(doc.doc_id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    @property
    def doc_ids(self) -> tuple[str, ...]:
        return tuple(doc.doc_id for doc in self.documents)


@dataclass(frozen=True)
class TokenizerConfig:
    """Stopword list, alias map, and the document-count floor for terms.

    Aliases are applied in a single step: an alias target is never looked
    up again, so chains like a->b plus b->c are rejected outright.
    """

    stopwords: frozenset[str] = frozenset()
    aliases: dict[str, str] = field(default_factory=dict)
    min_doc_count: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "stopwords", frozenset(self.stopwords))
        object.__setattr__(self, "aliases", dict(self.aliases))
        if self.min_doc_count < 1:
            raise ValueError(
                f"min_doc_count must be at least 1, got {self.min_doc_count}"
            )
        for src, dst in self.aliases.items():
            if dst in self.aliases:
                raise ValueError(f"alias chain not allowed: {src!r} -> {dst!r} -> ...")
            if src == dst:
                raise ValueError(f"alias maps {src!r} to itself")


def tokenize(text: str, config: TokenizerConfig) -> list[str]:
    """Split text into canonical tokens.

    Lowercases, takes maximal [a-z0-9]+ runs, and maps each token through
    the alias table once.  Stopwords are kept; dropping them is a
    vocabulary decision, not a tokenization one.
    """
    tokens = _TOKEN_RE.findall(text.lower())
    return [config.aliases.get(t, t) for t in tokens]


@dataclass(frozen=True)
class Vocabulary:
    """Ordered, duplicate-free list of index terms."""

    terms: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("vocabulary terms must be unique")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __contains__(self, term: object) -> bool:
        return term in self.terms


def select_vocabulary(corpus: Corpus, config: TokenizerConfig) -> Vocabulary:
    """Pick index terms: non-stopword tokens in at least min_doc_count docs.

    Terms are ordered by first appearance while scanning documents in
    corpus order, which keeps matrix rows stable across runs.
    """
    if len(corpus) == 0:
        raise ValueError("empty corpus")
    first_seen: list[str] = []
    doc_hits: dict[str, set[str]] = {}
    for doc in corpus:
        for token in tokenize(doc.text, config):
            if token in config.stopwords:
                continue
            if token not in doc_hits:
                doc_hits[token] = set()
                first_seen.append(token)
            doc_hits[token].add(doc.doc_id)
    terms = tuple(
        t for t in first_seen if len(doc_hits[t]) >= config.min_doc_count
    )
    return Vocabulary(terms=terms)


@dataclass(frozen=True)
class TermDocMatrix:
    """Count matrix: rows are vocabulary terms, columns are documents."""

    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    counts: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "doc_ids", tuple(self.doc_ids))
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.ndim != 2 and counts.size == 0:
            counts = counts.reshape(0, len(self.doc_ids))
        object.__setattr__(self, "counts", counts)
        if counts.shape != (len(self.terms), len(self.doc_ids)):
            raise ValueError(
                f"counts shape {counts.shape} does not match "
                f"{len(self.terms)} terms x {len(self.doc_ids)} documents"
            )
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("terms must be unique")
        if len(set(self.doc_ids)) != len(self.doc_ids):
            raise ValueError("document ids must be unique")
        if len(self.doc_ids) == 0:
            raise ValueError("matrix must have at least one document column")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.terms), len(self.doc_ids))


@dataclass(frozen=True)
class LabeledMatrix:
    """A real-valued matrix tagged with row and column labels."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        if values.shape != (len(self.row_labels), len(self.col_labels)):
            raise ValueError(
                f"values shape {values.shape} does not match "
                f"{len(self.row_labels)} x {len(self.col_labels)} labels"
            )
        if values.size and not np.isfinite(values).all():
            raise ValueError("matrix values must be finite")


def as_labeled(matrix: TermDocMatrix) -> LabeledMatrix:
    """View a count matrix as a labeled real matrix."""
    return LabeledMatrix(
        row_labels=matrix.terms,
        col_labels=matrix.doc_ids,
        values=matrix.counts.astype(np.float64),
    )


def build_matrix(
    corpus: Corpus, vocab: Vocabulary, config: TokenizerConfig
) -> TermDocMatrix:
    """Count canonical-token occurrences per vocabulary term and document.

    The vocabulary must come from select_vocabulary with the same config,
    otherwise counts and the doc-count floor can disagree.
    """
    index = {term: i for i, term in enumerate(vocab.terms)}
    counts = np.zeros((len(vocab), len(corpus)), dtype=np.int64)
    for j, doc in enumerate(corpus):
        for token in tokenize(doc.text, config):
            i = index.get(token)
            if i is not None:
                counts[i, j] += 1
    return TermDocMatrix(terms=vocab.terms, doc_ids=corpus.doc_ids, counts=counts)


def parse_corpus(text: str) -> Corpus:
    """Read documents from lines of the form id<TAB>text.

    Blank lines and lines starting with '#' are skipped.
    """
    documents = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"corpus line {lineno} has no tab separator: {raw!r}")
        doc_id, doc_text = line.split("\t", 1)
        documents.append(Document(doc_id=doc_id.strip(), text=doc_text.strip()))
    return Corpus(documents=tuple(documents))


def load_corpus(path: str | Path) -> Corpus:
    return parse_corpus(Path(path).read_text(encoding="utf-8"))


def parse_tokenizer_config(text: str, min_doc_count: int = 2) -> TokenizerConfig:
    """Read 'stopword <token>' and 'alias <from> <to>' directives.

    Blank lines and '#' comments are skipped; any other directive is an
    error.
    """
    stopwords = set()
    aliases: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "stopword" and len(parts) == 2:
            stopwords.add(parts[1])
        elif parts[0] == "alias" and len(parts) == 3:
            src, dst = parts[1], parts[2]
            if src in aliases:
                raise ValueError(f"config line {lineno}: duplicate alias for {src!r}")
            aliases[src] = dst
        else:
            raise ValueError(f"config line {lineno} is not understood: {raw!r}")
    return TokenizerConfig(
        stopwords=frozenset(stopwords), aliases=aliases, min_doc_count=min_doc_count
    )


def load_tokenizer_config(path: str | Path, min_doc_count: int = 2) -> TokenizerConfig:
    return parse_tokenizer_config(
        Path(path).read_text(encoding="utf-8"), min_doc_count=min_doc_count
    )


def format_matrix(matrix: TermDocMatrix) -> str:
    """Serialize a count matrix as tab-separated text.

    First line: tab-joined document ids.  Each following line: the term,
    then one count per document.  Ends with a newline.
    """
    lines = ["\t".join(matrix.doc_ids)]
    for i, term in enumerate(matrix.terms):
        row = "\t".join(str(int(c)) for c in matrix.counts[i])
        lines.append(f"{term}\t{row}")
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> TermDocMatrix:
    """Inverse of format_matrix; rejects ragged or negative rows."""
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ValueError("matrix text has no document id header")
    doc_ids = tuple(lines[0].split("\t"))
    terms: list[str] = []
    rows: list[list[int]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split("\t")
        term, cells = parts[0], parts[1:]
        if len(cells) != len(doc_ids):
            raise ValueError(
                f"matrix line {lineno}: term {term!r} has {len(cells)} counts, "
                f"expected {len(doc_ids)}"
            )
        try:
            row = [int(c) for c in cells]
        except ValueError:
            raise ValueError(
                f"matrix line {lineno}: counts must be integers"
            ) from None
        terms.append(term)
        rows.append(row)
    counts = np.array(rows, dtype=np.int64) if rows else np.zeros(
        (0, len(doc_ids)), dtype=np.int64
    )
    return TermDocMatrix(terms=tuple(terms), doc_ids=doc_ids, counts=counts)


def load_matrix(path: str | Path) -> TermDocMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


def save_matrix(matrix: TermDocMatrix, path: str | Path) -> None:
    Path(path).write_text(format_matrix(matrix), encoding="utf-8")


def example_corpus() -> Corpus:
    """The bundled nine-title demo corpus (ids c1..c5 and m1..m4)."""
    text = resources.files("lsakit.data").joinpath("titles.tsv").read_text("utf-8")
    return parse_corpus(text)


def default_config() -> TokenizerConfig:
    """The bundled stopword and alias configuration for the demo corpus."""
    text = resources.files("lsakit.data").joinpath("tokenizer.cfg").read_text("utf-8")
    return parse_tokenizer_config(text)
