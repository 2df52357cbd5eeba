"""
Testes do pipeline de relatórios.
"""

import pytest
import orjson
import pandas as pd

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.models import LemmaReport, LemmaResult
from gkgalois.pipelines import ReportPipeline


@pytest.fixture
def report():
    return LemmaReport(
        q=2,
        version="1.0.0",
        config={"q": 2, "seed": 27499},
        results=[
            LemmaResult(name="genus_identity", passed=True, detail={"genus": 10}),
            LemmaResult(name="bezout_sums", passed=True, detail={"genus": 0}),
        ],
    )


class TestReportPipeline:
    """Testes para ReportPipeline."""

    def test_json(self, clean_env, report):
        """Testa JSON com chaves ordenadas e nome determinístico."""
        pipeline = ReportPipeline(fmt="json")
        path = pipeline.save(report)
        assert path.name == "lemmas_q2.json"
        assert path.parent == clean_env / "reports"
        raw = path.read_bytes()
        assert raw.endswith(b"\n")
        data = orjson.loads(raw)
        assert data["command"] == "lemmas"
        assert list(data) == sorted(data)
        assert data["results"][0]["detail"] == {"genus": 10}
        assert not list(path.parent.glob("*.tmp"))

    def test_json_is_reproducible(self, clean_env, report):
        """Testa que gravar duas vezes produz os mesmos bytes."""
        pipeline = ReportPipeline(fmt="json")
        first = pipeline.save(report).read_bytes()
        second = pipeline.save(report).read_bytes()
        assert first == second

    def test_csv(self, clean_env, report):
        """Testa CSV com colunas achatadas e ordenadas."""
        path = ReportPipeline(fmt="csv").save(report)
        assert path.suffix == ".csv"
        frame = pd.read_csv(path)
        assert list(frame.columns) == sorted(frame.columns)
        assert "detail.genus" in frame.columns
        assert frame["name"].tolist() == ["genus_identity", "bezout_sums"]

    def test_text(self, clean_env, report):
        """Testa o resumo textual."""
        path = ReportPipeline(fmt="text").save(report)
        assert path.name == "lemmas_q2.txt"
        assert path.read_text(encoding="utf-8") == "Lemas q=2:\n  PASS genus_identity\n  PASS bezout_sums\n"

    def test_explicit_directory(self, clean_env, report):
        """Testa diretório explícito, criado sob demanda."""
        target = clean_env / "outro" / "dir"
        path = ReportPipeline(output_dir=str(target)).save(report)
        assert path.parent == target

    def test_invalid_format(self, clean_env):
        """Testa formato inválido."""
        with pytest.raises(ValueError, match="Formato deve ser um dos"):
            ReportPipeline(fmt="xml")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
