"""Tests for dataset reading and writing."""

import json

import numpy as np
import pytest

from ecl_gsr.core.exceptions import GraphFormatError
from ecl_gsr.graph.io import load_graph, load_matrix_csv, read_dataset, save_graph


def write_dataset(root, edges="0\t1\n1\t2\n", features="1,0\n0,1\n1,1\n", labels=None, split=None):
    root.mkdir(parents=True, exist_ok=True)
    (root / "edges.tsv").write_text(edges, encoding="utf-8")
    (root / "features.csv").write_text(features, encoding="utf-8")
    (root / "labels.tsv").write_text(labels or "0\t0\n1\t1\n2\t0\n", encoding="utf-8")
    split = split or {"train": [0], "val": [1], "test": [2]}
    (root / "split.json").write_text(json.dumps(split), encoding="utf-8")
    return root


def test_load_graph_reads_all_files(tmp_path):
    graph = load_graph(write_dataset(tmp_path / "data"))

    assert graph.num_nodes == 3
    assert graph.edges.tolist() == [[0, 1], [1, 2]]
    assert graph.labels.tolist() == [0, 1, 0]
    assert graph.train_mask.tolist() == [0]
    np.testing.assert_array_equal(graph.features, [[1, 0], [0, 1], [1, 1]])


def test_self_loops_and_duplicates_are_counted(tmp_path):
    root = write_dataset(tmp_path / "data", edges="0\t1\n1\t0\n2\t2\n")

    graph, report = read_dataset(root)

    assert graph.num_edges == 1
    assert report.self_loops_dropped == 1
    assert report.duplicate_edges_merged == 1


def test_out_of_range_edge_reports_file_and_line(tmp_path):
    root = write_dataset(tmp_path / "data", edges="0\t1\n0\t7\n")

    with pytest.raises(GraphFormatError) as excinfo:
        load_graph(root)

    assert excinfo.value.line == 2
    assert "edges.tsv:2" in str(excinfo.value)


def test_ragged_feature_row_is_rejected(tmp_path):
    root = write_dataset(tmp_path / "data", features="1,0\n0\n1,1\n")

    with pytest.raises(GraphFormatError, match="ragged"):
        load_graph(root)


def test_non_numeric_token_is_rejected(tmp_path):
    root = write_dataset(tmp_path / "data", features="1,0\n0,x\n1,1\n")

    with pytest.raises(GraphFormatError, match="non-numeric"):
        load_graph(root)


def test_missing_file_is_reported(tmp_path):
    root = write_dataset(tmp_path / "data")
    (root / "labels.tsv").unlink()

    with pytest.raises(GraphFormatError, match="missing"):
        load_graph(root)


def test_save_then_load_preserves_graph(tmp_path, two_triangles):
    save_graph(two_triangles, tmp_path / "out")
    loaded = load_graph(tmp_path / "out")

    np.testing.assert_array_equal(loaded.edges, two_triangles.edges)
    np.testing.assert_array_equal(loaded.features, two_triangles.features)
    np.testing.assert_array_equal(loaded.labels, two_triangles.labels)
    np.testing.assert_array_equal(loaded.test_mask, two_triangles.test_mask)


def test_load_matrix_csv_skips_blank_lines(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("1.5,2\n\n3,4\n", encoding="utf-8")

    np.testing.assert_array_equal(load_matrix_csv(path), [[1.5, 2.0], [3.0, 4.0]])
