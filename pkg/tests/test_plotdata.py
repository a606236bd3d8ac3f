# coding=utf-8
"""绘图数据表"""

import pytest

from randmatch.montecarlo import build_experiment, execute
from randmatch.report import build_plot_table, load_result_document, plot_table_from_files
from randmatch.storage import LocalResultStore, ProvenanceHeader
from randmatch.theory import expected_increment
from randmatch.utils.errors import InvalidParameterError, SchemaMismatchError


def _save(tmp_path, name, stem, **overrides):
    result = execute(build_experiment(name, base_seed=2, **overrides))
    header = ProvenanceHeader("randmatch", "1.0.0", {"experiment": result.spec.to_dict()})
    return LocalResultStore(tmp_path).save_result(result, header, stem=stem)


class TestPlotTables:
    def test_empty_input_has_header_only(self):
        table = build_plot_table("increments", [])
        assert table.rows == []
        assert table.to_csv() == "r,empirical,se,theory,z\n"

    def test_comment_lines_precede_header(self):
        table = build_plot_table("increments", [])
        text = table.to_csv(["artifact: randmatch", "version: 1.0.0"])
        assert text == "# artifact: randmatch\n# version: 1.0.0\nr,empirical,se,theory,z\n"

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameterError):
            build_plot_table("histogram", [])

    def test_increments_table(self, tmp_path):
        paths = _save(tmp_path, "increments", "inc", n=10, trials=20)
        table = plot_table_from_files("increments", [paths["summary"]])
        assert [row[0] for row in table.rows] == list(range(1, 11))
        assert table.rows[0][3] == pytest.approx(expected_increment(10, 1))

    def test_convergence_table_sorted_by_n(self, tmp_path):
        big = _save(tmp_path, "theorem1", "t400", n=40, trials=4)["summary"]
        small = _save(tmp_path, "theorem1", "t200", n=20, trials=4)["summary"]
        table = plot_table_from_files("convergence", [big, small])
        assert [row[0] for row in table.rows] == [20, 40]
        assert table.columns == ["n", "p", "p_mean", "p_se", "theory", "rel_dev"]

    def test_records_file_is_resummarized(self, tmp_path):
        paths = _save(tmp_path, "membership", "mem", trials=30)
        from_records = load_result_document(paths["records"])
        from_summary = load_result_document(paths["summary"])
        assert from_records["summary"] == from_summary["summary"]
        assert from_records["analysis"] == from_summary["analysis"]
        assert len(plot_table_from_files("membership", [paths["records"]]).rows) == 6

    def test_quantity_mismatch(self, tmp_path):
        paths = _save(tmp_path, "parisi", "parisi", n=3, trials=3)
        with pytest.raises(SchemaMismatchError):
            plot_table_from_files("increments", [paths["summary"]])

    def test_unsupported_file_type(self, tmp_path):
        path = tmp_path / "result.txt"
        path.write_text("", encoding="utf-8")
        with pytest.raises(SchemaMismatchError):
            load_result_document(path)
