# coding=utf-8
"""结果文件的保存与读取"""

import json

import pytest

from randmatch.montecarlo import OUTCOME_INFEASIBLE, TrialRecord, build_experiment, execute
from randmatch.storage import FORMAT_CSV, LocalResultStore, ProvenanceHeader, format_csv
from randmatch.utils.errors import InvalidParameterError, SchemaMismatchError


def _header(spec, generated_at="2026-01-01T00:00:00+08:00"):
    return ProvenanceHeader("randmatch", "1.0.0", {"experiment": spec.to_dict()}, generated_at)


@pytest.fixture
def parisi_result():
    return execute(build_experiment("parisi", base_seed=3, n=3, trials=8))


class TestLocalResultStore:
    def test_jsonl_round_trip(self, tmp_path, parisi_result):
        store = LocalResultStore(tmp_path / "out")
        paths = store.save_result(parisi_result, _header(parisi_result.spec))
        assert paths["records"].name == "parisi.jsonl"
        assert paths["summary"].name == "parisi.summary.json"

        header, records = store.load_records(paths["records"])
        assert header.experiment == parisi_result.spec.to_dict()
        assert records == parisi_result.records

        doc = store.load_summary(paths["summary"])
        assert doc["summary"]["trials"] == 8
        assert doc["config"]["experiment"]["name"] == "parisi"

    def test_rerun_identical_except_timestamp(self, tmp_path):
        store = LocalResultStore(tmp_path)
        texts = []
        for stem, stamp in (("a", "2026-01-01T00:00:00+08:00"), ("b", "2026-02-02T12:00:00+08:00")):
            result = execute(build_experiment("increments", base_seed=5, n=4, trials=6))
            path = store.save_result(result, _header(result.spec, stamp), stem=stem)["records"]
            texts.append(path.read_text(encoding="utf-8").replace(stamp, "<ts>"))
        assert texts[0] == texts[1]

    def test_csv_columns(self, tmp_path, parisi_result):
        store = LocalResultStore(tmp_path)
        path = store.save_result(parisi_result, _header(parisi_result.spec), fmt=FORMAT_CSV)["records"]
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "# artifact: randmatch"
        table = [line for line in lines if not line.startswith("#")]
        assert table[0] == "trial_index,stream_id,outcome,cost,p_cost"
        assert len(table) == 1 + 8

    def test_csv_leaves_missing_scalars_blank(self):
        records = [
            TrialRecord(0, 11, scalars={"cost": 1.5}),
            TrialRecord(1, 12, outcome=OUTCOME_INFEASIBLE, scalars={"failed_r": 2.0}),
        ]
        text = format_csv(ProvenanceHeader("randmatch", "1.0.0"), records)
        rows = [line for line in text.splitlines() if not line.startswith("#")]
        assert rows == ["trial_index,stream_id,outcome,cost,failed_r", "0,11,ok,1.5,", "1,12,infeasible,,2.0"]

    def test_unknown_format(self, tmp_path, parisi_result):
        with pytest.raises(InvalidParameterError):
            LocalResultStore(tmp_path).save_result(parisi_result, _header(parisi_result.spec), fmt="xml")


class TestSchemaErrors:
    @pytest.mark.parametrize(
        "lines",
        [
            ["not json"],
            [{"type": "trial", "trial_index": 0, "stream_id": 1}],
            [{"type": "header"}, {"type": "header"}],
            [{"type": "header"}, {"type": "trial", "stream_id": 1}],
            [{"type": "mystery"}],
            [],
        ],
    )
    def test_bad_records_file(self, tmp_path, lines):
        path = tmp_path / "bad.jsonl"
        path.write_text(
            "\n".join(line if isinstance(line, str) else json.dumps(line) for line in lines),
            encoding="utf-8",
        )
        with pytest.raises(SchemaMismatchError) as exc:
            LocalResultStore(tmp_path).load_records(path)
        assert exc.value.exit_code == 3

    def test_bad_summary_file(self, tmp_path):
        path = tmp_path / "x.summary.json"
        path.write_text(json.dumps({"type": "header"}), encoding="utf-8")
        with pytest.raises(SchemaMismatchError):
            LocalResultStore(tmp_path).load_summary(path)
        path.write_text("{", encoding="utf-8")
        with pytest.raises(SchemaMismatchError):
            LocalResultStore(tmp_path).load_summary(path)
