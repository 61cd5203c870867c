import numpy as np
import pytest

from src.antithetic.evalkit.ranking import average_precision, cmc_map, distance_matrix, probe_breakdown
from src.antithetic.models.records import PartitionLabel


def _oracle(dm, q_ids, g_ids, q_cams, g_cams):
    """Full sort and the literal AP definition."""
    num_q, num_g = dm.shape
    hits_at = [0] * num_g
    ap_total = 0.0
    valid = 0
    for i in range(num_q):
        ranked = sorted(range(num_g), key=lambda j: (dm[i][j], j))
        kept = [j for j in ranked if not (g_ids[j] == q_ids[i] and g_cams[j] == q_cams[i])]
        relevant = [g_ids[j] == q_ids[i] for j in kept]
        if True not in relevant:
            continue
        first = relevant.index(True)
        for k in range(first, num_g):
            hits_at[k] += 1
        hits = 0
        precision_sum = 0.0
        for position, hit in enumerate(relevant):
            if hit:
                hits += 1
                precision_sum += hits / (position + 1)
        ap_total += precision_sum / hits
        valid += 1
    if valid == 0:
        return [0.0] * num_g, 0.0, num_q
    return [count / valid for count in hits_at], ap_total / valid, num_q - valid


def test_distance_matrix_examples():
    dm = distance_matrix(np.array([[1.0, 0.0]]), np.array([[2.0, 0.0], [0.0, 3.0]]))
    assert dm.tolist() == [[0.0, 1.0]]


def test_distance_matrix_symmetric(rng):
    features = rng.normal(size=(6, 4))
    dm = distance_matrix(features, features)
    assert np.allclose(dm, dm.T, atol=1e-15)
    assert np.allclose(np.diag(dm), 0.0, atol=1e-15)
    assert dm.min() >= 0.0 and dm.max() <= 2.0


def test_distance_matrix_scale_invariant(rng):
    queries = rng.normal(size=(3, 5))
    gallery = rng.normal(size=(4, 5))
    scaled = gallery.copy()
    scaled[2] *= 7.5
    assert np.allclose(distance_matrix(queries, gallery), distance_matrix(queries, scaled), atol=1e-14)


def test_distance_matrix_width_mismatch():
    with pytest.raises(ValueError):
        distance_matrix(np.zeros((1, 3)), np.zeros((1, 4)))


def test_perfect_retrieval():
    report = cmc_map(np.array([[0.1, 0.5, 0.9]]), [4], [4, 1, 2], [0], [1, 1, 1])
    assert report.map == 1.0
    assert report.cmc == [1.0, 1.0, 1.0]


def test_relevance_pattern_average_precision():
    """Hits at ranks 2 and 4: (1/2 + 2/4) / 2."""
    report = cmc_map(np.array([[0.1, 0.2, 0.3, 0.4]]), [0], [1, 0, 1, 0], [0], [1, 1, 1, 1])
    assert report.map == 0.5
    assert report.cmc == [0.0, 1.0, 1.0, 1.0]
    assert average_precision(np.array([False, True, False, True])) == 0.5


def test_junk_excluded():
    report = cmc_map(np.array([[0.0, 0.5, 0.2]]), [0], [0, 0, 1], [0], [0, 1, 1])
    assert report.map == 0.5
    assert report.cmc == [0.0, 1.0, 1.0]


def test_ties_broken_by_gallery_index():
    report = cmc_map(np.array([[0.3, 0.3]]), [0], [1, 0], [0], [1, 1])
    assert report.cmc[0] == 0.0
    report = cmc_map(np.array([[0.3, 0.3]]), [0], [0, 1], [0], [1, 1])
    assert report.cmc[0] == 1.0


def test_query_without_valid_match_is_skipped():
    report = cmc_map(np.array([[0.1, 0.2], [0.1, 0.2]]), [0, 1], [0, 1], [0, 0], [0, 1])
    assert report.skipped_queries == 1
    assert report.num_queries == 2
    assert report.map == 1.0


def test_max_rank():
    report = cmc_map(np.array([[0.1, 0.2, 0.3]]), [0], [1, 2, 0], [0], [1, 1, 1], max_rank=2)
    assert report.cmc == [0.0, 0.0]


def test_matches_brute_force_oracle():
    rng = np.random.default_rng(2718)
    for _ in range(500):
        num_q = int(rng.integers(1, 6))
        num_g = int(rng.integers(1, 11))
        dm = rng.integers(0, 5, size=(num_q, num_g)) / 4.0
        q_ids, g_ids = rng.integers(0, 3, size=num_q), rng.integers(0, 3, size=num_g)
        q_cams, g_cams = rng.integers(0, 2, size=num_q), rng.integers(0, 2, size=num_g)
        report = cmc_map(dm, q_ids, g_ids, q_cams, g_cams)
        cmc, m_ap, skipped = _oracle(dm, q_ids.tolist(), g_ids.tolist(), q_cams.tolist(), g_cams.tolist())
        assert report.cmc == cmc
        assert report.map == m_ap
        assert report.skipped_queries == skipped


def test_last_cmc_is_one_when_every_query_matches(rng):
    dm = rng.uniform(size=(4, 8))
    report = cmc_map(dm, [0, 1, 2, 3], [0, 1, 2, 3, 0, 1, 2, 3], [0] * 4, [1] * 8)
    assert report.cmc[-1] == 1.0


def test_probe_breakdown(rng):
    dm = rng.uniform(size=(6, 9))
    q_ids = [0, 1, 2, 0, 1, 2]
    g_ids = [0, 1, 2] * 3
    q_cams, g_cams = [0] * 6, [1] * 9
    bins = [PartitionLabel.LR, PartitionLabel.HR, PartitionLabel.LR, PartitionLabel.HR, PartitionLabel.LR,
            PartitionLabel.HR]
    reports = probe_breakdown(dm, q_ids, g_ids, q_cams, g_cams, bins)
    assert set(reports) == {"LR", "HR", "ALL"}
    assert reports["ALL"] == cmc_map(dm, q_ids, g_ids, q_cams, g_cams)
    weighted = (reports["LR"].map * 3 + reports["HR"].map * 3) / 6
    assert weighted == pytest.approx(reports["ALL"].map, abs=1e-12)


def test_probe_breakdown_missing_bin(rng):
    dm = rng.uniform(size=(2, 3))
    reports = probe_breakdown(dm, [0, 1], [0, 1, 2], [0, 0], [1, 1, 1], [PartitionLabel.HR, PartitionLabel.HR])
    assert "LR" not in reports
    assert reports["HR"] == reports["ALL"]
