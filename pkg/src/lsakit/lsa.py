"""Rank-k semantic models over a count matrix, and keyword retrieval.

A model is the count matrix plus its singular value decomposition.  A
keyword query at rank k scores every document by the keyword's row in the
rank-k reconstruction; at full rank the raw counts themselves are used, so
retrieval degenerates to exact occurrence lookup.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import LabeledMatrix, TermDocMatrix, TokenizerConfig, tokenize
from .linalg import SvdFactors, reconstruct, svd, truncate

# Sentinel rank: score by the raw counts instead of a truncated model.
FULL = None


@dataclass(frozen=True)
class LsaModel:
    """A count matrix together with its full decomposition."""

    matrix: TermDocMatrix
    factors: SvdFactors

    def __post_init__(self) -> None:
        if self.factors.u.shape[0] != len(self.matrix.terms):
            raise ValueError(
                f"factor rows {self.factors.u.shape[0]} do not match "
                f"{len(self.matrix.terms)} vocabulary terms"
            )
        if self.factors.v.shape[0] != len(self.matrix.doc_ids):
            raise ValueError(
                f"factor columns {self.factors.v.shape[0]} do not match "
                f"{len(self.matrix.doc_ids)} documents"
            )

    @property
    def max_rank(self) -> int:
        return self.factors.rank


def fit(matrix: TermDocMatrix) -> LsaModel:
    """Decompose the counts once; queries at any rank reuse the factors."""
    if len(matrix.terms) == 0:
        raise ValueError("matrix has no vocabulary rows")
    return LsaModel(matrix=matrix, factors=svd(matrix.counts.astype(np.float64)))


def reconstruct_at_rank(model: LsaModel, k: int | None) -> LabeledMatrix:
    """Labeled rank-k approximation of the counts (k=None: the counts)."""
    if k is None:
        values = model.matrix.counts.astype(np.float64)
    else:
        values = reconstruct(truncate(model.factors, k))
    return LabeledMatrix(
        row_labels=model.matrix.terms,
        col_labels=model.matrix.doc_ids,
        values=values,
    )


@dataclass(frozen=True)
class RankedResult:
    """One retrieved document and its relevance score."""

    doc_id: str
    score: float


def _canonical_keyword(keyword: str, config: TokenizerConfig | None) -> str:
    tokens = tokenize(keyword, config if config is not None else TokenizerConfig())
    if len(tokens) != 1:
        raise ValueError(
            f"expected a single keyword, got {len(tokens)} tokens from {keyword!r}"
        )
    return tokens[0]


def _term_row(model: LsaModel, term: str) -> int:
    try:
        return model.matrix.terms.index(term)
    except ValueError:
        near = [
            t
            for t in model.matrix.terms
            if t.startswith(term) or term.startswith(t)
        ]
        hint = f" (near matches: {', '.join(near)})" if near else ""
        raise ValueError(f"term not in vocabulary: {term!r}{hint}") from None


def keyword_search(
    model: LsaModel,
    keyword: str,
    k: int | None = FULL,
    threshold: float = 0.0,
    limit: int | None = None,
    config: TokenizerConfig | None = None,
) -> list[RankedResult]:
    """Rank documents for a keyword by its row of the rank-k reconstruction.

    The keyword is lowercased, tokenized, and alias-normalized (pass the
    corpus config to apply its aliases); it must reduce to one token that
    is in the vocabulary.  Only documents scoring strictly above the
    threshold are returned, best first; equal scores keep matrix column
    order.  limit caps the number of returned documents after sorting.
    """
    term = _canonical_keyword(keyword, config)
    i = _term_row(model, term)
    if limit is not None and limit < 0:
        raise ValueError(f"limit must be non-negative, got {limit}")
    if k is FULL:
        row = model.matrix.counts[i].astype(np.float64)
    else:
        row = reconstruct(truncate(model.factors, k))[i]
    order = sorted(range(len(model.matrix.doc_ids)), key=lambda j: (-row[j], j))
    results = [
        RankedResult(doc_id=model.matrix.doc_ids[j], score=float(row[j]))
        for j in order
        if row[j] > threshold
    ]
    if limit is not None:
        results = results[:limit]
    return results


def format_results(results) -> str:
    """Tab-separated lines: 1-based rank, document id, score to 6 places."""
    lines = [
        f"{rank}\t{r.doc_id}\t{r.score:.6f}"
        for rank, r in enumerate(results, start=1)
    ]
    return "\n".join(lines) + "\n" if lines else ""


def average_precision(ranked_ids, relevant_ids) -> float:
    """Mean precision over ranks that hold a relevant document.

    The sum of precision-at-hit values is divided by
    min(len(relevant), len(ranked)), so a short but perfect ranked list
    still scores 1.0, while relevant documents pushed past the returned
    list's end do reduce the score.  Empty inputs score 0.0.
    """
    ranked = list(ranked_ids)
    relevant = frozenset(relevant_ids)
    denom = min(len(relevant), len(ranked))
    if denom == 0:
        return 0.0
    hits = 0
    total = 0.0
    for position, doc_id in enumerate(ranked, start=1):
        if doc_id in relevant:
            hits += 1
            total += hits / position
    return total / denom


@dataclass(frozen=True)
class SweepEntry:
    """One (rank, keyword) cell of a retrieval sweep."""

    k: int
    keyword: str
    avg_precision: float
    ranked: tuple[str, ...]


@dataclass(frozen=True)
class SweepReport:
    """Retrieval quality across ranks, one entry per (rank, keyword)."""

    ks: tuple[int, ...]
    keywords: tuple[str, ...]
    entries: tuple[SweepEntry, ...]

    def entry(self, k: int, keyword: str) -> SweepEntry:
        for e in self.entries:
            if e.k == k and e.keyword == keyword:
                return e
        raise KeyError(f"no sweep entry for k={k}, keyword={keyword!r}")


def sweep_ranks(
    model: LsaModel,
    keywords,
    relevant: dict[str, frozenset[str]],
    ks,
    threshold: float = 0.0,
    config: TokenizerConfig | None = None,
) -> SweepReport:
    """Run every keyword at every rank and score the rankings.

    relevant maps each swept keyword to its relevant document ids; ks must
    be strictly increasing ranks within the model's range.
    """
    keywords = tuple(keywords)
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("ks must be non-empty")
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError(f"ks must be strictly increasing, got {list(ks)}")
    for k in ks:
        if k < 1 or k > model.max_rank:
            raise ValueError(f"rank out of range: got {k}, expected 1..{model.max_rank}")
    if not keywords:
        raise ValueError("keywords must name at least one keyword")
    known = set(model.matrix.doc_ids)
    for keyword in keywords:
        if keyword not in relevant:
            raise ValueError(f"no relevance judgments for keyword {keyword!r}")
        for doc_id in relevant[keyword]:
            if doc_id not in known:
                raise ValueError(
                    f"unknown document id in judgments for {keyword!r}: {doc_id!r}"
                )
    entries = []
    for k in ks:
        for keyword in keywords:
            results = keyword_search(
                model, keyword, k=k, threshold=threshold, config=config
            )
            ranked = tuple(r.doc_id for r in results)
            entries.append(
                SweepEntry(
                    k=k,
                    keyword=keyword,
                    avg_precision=average_precision(ranked, relevant[keyword]),
                    ranked=ranked,
                )
            )
    return SweepReport(ks=ks, keywords=keywords, entries=tuple(entries))


def format_sweep(report: SweepReport) -> str:
    """Tab-separated lines: k, keyword, average precision, ranked ids."""
    lines = [
        f"{e.k}\t{e.keyword}\t{e.avg_precision:.6f}\t{','.join(e.ranked)}"
        for e in report.entries
    ]
    return "\n".join(lines) + "\n" if lines else ""


def parse_judgments(text: str) -> dict[str, frozenset[str]]:
    """Read 'keyword<TAB>doc,doc,...' lines into a judgment map."""
    judgments: dict[str, frozenset[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"judgments line {lineno} has no tab separator: {raw!r}")
        keyword, doc_field = line.split("\t", 1)
        keyword = keyword.strip()
        docs = [d.strip() for d in doc_field.split(",") if d.strip()]
        if not keyword or not docs:
            raise ValueError(f"judgments line {lineno} is incomplete: {raw!r}")
        if keyword in judgments:
            raise ValueError(f"judgments line {lineno}: duplicate keyword {keyword!r}")
        judgments[keyword] = frozenset(docs)
    return judgments


def load_judgments(path: str | Path) -> dict[str, frozenset[str]]:
    return parse_judgments(Path(path).read_text(encoding="utf-8"))
