"""End-to-end checks of the six headline behaviors.

Each criterion prints one pass/fail line (run with -s to see them on
success) and is timed against its budget.  Reference values are spelled
out here rather than read from the golden files, so this module stays
meaningful even if the fixtures are regenerated.
"""

import time
from contextlib import contextmanager

import numpy as np

from lsakit import corpus, imaging, linalg, lsa, viz

# Expected nonzero cells of the count matrix built from the bundled
# nine-title corpus; every cell not listed must be zero.
REFERENCE_COUNTS = {
    "human": {"c1": 1, "c4": 1},
    "interface": {"c1": 1, "c3": 1},
    "computer": {"c1": 1, "c2": 1},
    "user": {"c2": 1, "c3": 1, "c5": 1},
    "system": {"c2": 1, "c3": 1, "c4": 2},
    "response": {"c2": 1, "c5": 1},
    "time": {"c2": 1, "c5": 1},
    "eps": {"c3": 1, "c4": 1},
    "survey": {"c2": 1, "m4": 1},
    "trees": {"m1": 1, "m2": 1, "m3": 1},
    "graph": {"m2": 1, "m3": 1, "m4": 1},
    "minors": {"m3": 1, "m4": 1},
}

DOC_IDS = ("c1", "c2", "c3", "c4", "c5", "m1", "m2", "m3", "m4")


@contextmanager
def criterion(number: int, label: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except Exception:
        print(f"criterion {number} ({label}): FAIL")
        raise
    elapsed = time.perf_counter() - start
    if budget is not None and elapsed > budget:
        print(f"criterion {number} ({label}): FAIL ({elapsed:.2f}s > {budget:.0f}s)")
        raise AssertionError(
            f"criterion {number} exceeded its {budget:.0f}s budget: {elapsed:.2f}s"
        )
    print(f"criterion {number} ({label}): PASS ({elapsed:.2f}s)")


def gram_oracle_sigma(a: np.ndarray) -> np.ndarray:
    gram = a.T @ a if a.shape[0] >= a.shape[1] else a @ a.T
    return np.sqrt(np.clip(np.linalg.eigvalsh(gram), 0.0, None))[::-1]


def test_criterion_1_count_matrix(golden_dir):
    with criterion(1, "count matrix from the bundled corpus", budget=1.0):
        docs = corpus.example_corpus()
        config = corpus.default_config()
        vocab = corpus.select_vocabulary(docs, config)
        matrix = corpus.build_matrix(docs, vocab, config)
        assert matrix.doc_ids == DOC_IDS
        assert set(matrix.terms) == set(REFERENCE_COUNTS)
        assert len(matrix.terms) == 12
        for i, term in enumerate(matrix.terms):
            for j, doc in enumerate(matrix.doc_ids):
                assert int(matrix.counts[i, j]) == REFERENCE_COUNTS[term].get(doc, 0), (
                    f"cell ({term}, {doc})"
                )
        golden = (golden_dir / "example_matrix.tsv").read_text(encoding="utf-8")
        assert corpus.format_matrix(matrix) == golden


def test_criterion_2_retrieval_orderings(model):
    with criterion(2, "keyword retrieval orderings", budget=1.0):
        # full rank: scores are tied counts, so only set membership is law
        full_graph = lsa.keyword_search(model, "graph", k=lsa.FULL)
        assert {r.doc_id for r in full_graph} == {"m2", "m3", "m4"}
        assert [r.score for r in full_graph] == [1.0, 1.0, 1.0]
        full_human = lsa.keyword_search(model, "human", k=lsa.FULL)
        assert {r.doc_id for r in full_human} == {"c1", "c4"}

        human6 = lsa.keyword_search(model, "human", k=6, limit=6)
        assert [r.doc_id for r in human6] == ["c1", "c4", "c2", "c3", "m1", "m2"]

        human2 = lsa.keyword_search(model, "human", k=2)
        assert [r.doc_id for r in human2] == ["c4", "c2", "c3", "c5", "c1"]

        # at rank 2 every hci document outscores every graph document
        row = lsa.reconstruct_at_rank(model, 2).values[
            model.matrix.terms.index("human")
        ]
        by_doc = dict(zip(model.matrix.doc_ids, row))
        c_scores = [by_doc[d] for d in ("c1", "c2", "c3", "c4", "c5")]
        m_scores = [by_doc[d] for d in ("m1", "m2", "m3", "m4")]
        assert min(c_scores) > max(m_scores)

        graph6 = lsa.keyword_search(model, "graph", k=6, limit=6)
        assert [r.doc_id for r in graph6] == ["m3", "m4", "m2", "m1", "c2", "c3"]

        graph2 = lsa.keyword_search(model, "graph", k=2, limit=6)
        assert [r.doc_id for r in graph2] == ["m3", "m4", "m2", "c2", "m1", "c5"]

        # the scored rankings must be strict, not tie-broken accidents
        for ranked in (human6, human2, graph6, graph2):
            scores = [r.score for r in ranked]
            assert all(a > b for a, b in zip(scores, scores[1:]))


def test_criterion_3_svd_battery(table_matrix):
    with criterion(3, "decomposition battery", budget=10.0):
        rng = np.random.RandomState(1234)
        cases = [table_matrix.counts.astype(float)]
        for _ in range(100):
            m = rng.randint(1, 31)
            n = rng.randint(1, 31)
            cases.append(rng.randn(m, n))
        for a in cases:
            factors = linalg.svd(a)
            r = factors.rank
            norm = float(np.sqrt((a * a).sum()))
            scale = max(1.0, norm)

            assert np.abs(factors.u.T @ factors.u - np.eye(r)).max() <= 1e-10
            assert np.abs(factors.v.T @ factors.v - np.eye(r)).max() <= 1e-10

            err = linalg.frobenius_distance(a, linalg.reconstruct(factors))
            assert err <= 1e-10 * scale

            sigma_ref = gram_oracle_sigma(a)
            assert np.abs(factors.sigma - sigma_ref).max() <= 1e-8

            # discarding trailing singular values costs exactly their mass
            tails = np.sqrt(np.cumsum((sigma_ref**2)[::-1])[::-1])
            for k in range(1, r):
                err_k = linalg.frobenius_distance(
                    a, linalg.reconstruct(linalg.truncate(factors, k))
                )
                assert abs(err_k - tails[k]) <= 1e-9 * scale


def test_criterion_4_image_compression(data_dir):
    with criterion(4, "grayscale image compression", budget=5.0):
        image = imaging.load_pgm(data_dir / "scene.pgm")
        assert (image.width, image.height) == (64, 48)

        data = imaging.write_pgm(image)
        assert np.array_equal(imaging.read_pgm(data).pixels, image.pixels)

        full, _ = imaging.compress_image(image, min(image.height, image.width))
        diff = np.abs(full.pixels.astype(int) - image.pixels.astype(int))
        assert diff.max() <= 1

        reports = {k: imaging.compress_image(image, k)[1] for k in (9, 25, 36)}
        assert reports[25].rel_error > reports[36].rel_error > 0.0
        assert reports[9].rel_error > reports[25].rel_error
        energies = [reports[k].energy for k in (9, 25, 36)]
        assert energies == sorted(energies)
        assert all(0.0 < e <= 1.0 for e in energies)


def test_criterion_5_heatmap_palettes(table_matrix, model):
    with criterion(5, "heatmap palettes", budget=1.0):
        raw = corpus.as_labeled(table_matrix)
        discrete = viz.HeatmapSpec(palette=viz.DISCRETE3)
        ppm = viz.render_ppm(raw, discrete)
        assert viz.distinct_colors(ppm) == 3

        smooth = lsa.reconstruct_at_rank(model, 6)
        continuous = viz.HeatmapSpec(palette=viz.CONTINUOUS)
        ppm6 = viz.render_ppm(smooth, continuous)
        assert viz.distinct_colors(ppm6) > 3

        assert viz.render_ppm(raw, discrete) == ppm
        assert viz.render_svg(smooth, continuous) == viz.render_svg(smooth, continuous)


def test_criterion_6_rank_sweep_tradeoff(model):
    with criterion(6, "retrieval quality across ranks"):
        judgments = {
            "human": frozenset({"c1", "c2", "c3", "c4", "c5"}),
            "graph": frozenset({"m1", "m2", "m3", "m4"}),
        }
        report = lsa.sweep_ranks(model, ["human", "graph"], judgments, [2, 6])
        human2 = report.entry(2, "human").avg_precision
        human6 = report.entry(6, "human").avg_precision
        graph2 = report.entry(2, "graph").avg_precision
        graph6 = report.entry(6, "graph").avg_precision
        assert human2 > human6
        assert graph6 > graph2
        assert human2 == 1.0
        assert graph6 == 1.0
        assert abs(human6 - 0.8) <= 1e-12
        assert abs(graph2 - 0.95) <= 1e-12
