"""Unit tests for swarm trace files."""

import pytest

from src.bench.exceptions import BenchError
from src.bench.trace import emit_trace, read_trace, trace_records
from src.environments.chain_trap import ChainTrap
from src.models.planner_params import FmcParams
from src.planning.engine import FmcEngine


@pytest.fixture(scope="module")
def episode():
    params = FmcParams(n_walkers=10, time_horizon=6, dt=1, max_samples=60, seed=0)
    return FmcEngine().run_episode(ChainTrap(), params, max_steps=3, seed=0)


class TestTraceRecords:
    """Tests for trace_records."""

    def test_empty_run(self):
        """Test an empty run produces only the summary line."""
        assert trace_records([]) == [
            {"kind": "summary", "episodes": 0, "decisions": 0, "iterations": 0}
        ]

    def test_line_order(self, episode):
        """Test each decision follows its iterations and the summary is last."""
        records = trace_records([(0, episode)])
        kinds = [r["kind"] for r in records]

        assert kinds[-1] == "summary"
        assert kinds.count("decision") == len(episode.decisions)
        first_decision = kinds.index("decision")
        assert all(kind == "iteration" for kind in kinds[:first_decision])
        assert all(r["decision"] == 0 for r in records[:first_decision])

    def test_summary_counts(self, episode):
        """Test the summary counts episodes, decisions and iterations."""
        summary = trace_records([(0, episode), (1, episode)])[-1]

        assert summary["episodes"] == 2
        assert summary["decisions"] == 2 * len(episode.decisions)
        assert summary["iterations"] == 2 * sum(len(d.iterations) for d in episode.decisions)

    def test_iteration_fields(self, episode):
        """Test iteration lines carry the swarm snapshot."""
        line = trace_records([(4, episode)])[0]

        assert line["seed"] == 4
        assert {"iteration", "samples_used", "alive", "depths", "virtual_rewards"} <= set(line)
        assert len(line["depths"]) == 10


class TestTraceFile:
    """Tests for emit_trace / read_trace."""

    def test_written_lines_read_back(self, tmp_path, episode):
        """Test the file holds one JSON object per record."""
        path = emit_trace([(0, episode)], tmp_path / "t" / "trace.jsonl")

        assert read_trace(path) == trace_records([(0, episode)])

    def test_invalid_line(self, tmp_path):
        """Test a corrupt line is reported with its number."""
        path = tmp_path / "trace.jsonl"
        path.write_text('{"kind": "summary"}\nnot json\n')

        with pytest.raises(BenchError, match=":2:"):
            read_trace(path)

    def test_missing_file(self, tmp_path):
        """Test a missing file raises BenchError."""
        with pytest.raises(BenchError):
            read_trace(tmp_path / "none.jsonl")
