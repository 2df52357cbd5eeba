"""
Testes dos modelos pydantic.

Este módulo testa:
- Validação de testemunhas e veredictos
- Validação da configuração de execução
- Linhas tabulares e resumos dos relatórios
"""

import pytest

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.models import (
    MODULO_GROUP,
    Evidence,
    GaloisVerdict,
    GroupReport,
    LemmaReport,
    LemmaResult,
    RunConfig,
    Verdict,
    Witness,
)


def _verdict(**overrides):
    data = dict(
        plucker=["[1]", "[0]", "[0]", "[0]", "[0]", "[0]"],
        span=[["[1]", "[0]", "[0]", "[0]"], ["[0]", "[1]", "[0]", "[0]"]],
        rational=True,
        degree=8,
        degree_bounds=[8, 8],
        subgroup_order=8,
        verdict=Verdict.GALOIS,
        predicate=True,
        evidence=Evidence(kind="subgroup"),
    )
    data.update(overrides)
    return GaloisVerdict(**data)


class TestWitness:
    """Testes para o modelo Witness."""

    def test_valid_witness(self):
        """Testa testemunha com índices distintos."""
        w = Witness(plane=["[1]"] * 4, points=[["[1]"] * 4, ["[0]"] * 4], e=[1, 3], field_degree=6)
        assert w.e == [1, 3]

    def test_equal_indices(self):
        """Testa rejeição de índices iguais."""
        with pytest.raises(ValueError, match="índices de ramificação distintos"):
            Witness(plane=["[1]"] * 4, points=[["[1]"] * 4, ["[0]"] * 4], e=[2, 2], field_degree=6)

    def test_wrong_number_of_points(self):
        """Testa que a testemunha tem exatamente dois pontos."""
        with pytest.raises(ValueError):
            Witness(plane=["[1]"] * 4, points=[["[1]"] * 4], e=[1, 2], field_degree=6)


class TestGaloisVerdict:
    """Testes para o modelo GaloisVerdict."""

    def test_valid_galois(self):
        """Testa veredicto GALOIS consistente."""
        v = _verdict()
        assert v.verdict == Verdict.GALOIS
        assert v.line is None

    def test_galois_requires_matching_order(self):
        """Testa que GALOIS exige |G_ℓ| = d."""
        with pytest.raises(ValueError, match="ordem do subgrupo igual ao grau"):
            _verdict(subgroup_order=4)

    def test_not_galois_requires_evidence(self):
        """Testa que NOT_GALOIS exige testemunha ou marca condicional."""
        with pytest.raises(ValueError, match="sem testemunha"):
            _verdict(verdict=Verdict.NOT_GALOIS, subgroup_order=1, evidence=Evidence(kind="none"))

    def test_conditional_not_galois(self):
        """Testa NOT_GALOIS condicional ao grupo gerado."""
        v = _verdict(
            verdict=Verdict.NOT_GALOIS,
            subgroup_order=1,
            conditional=True,
            evidence=Evidence(kind="exhaustion", note=MODULO_GROUP),
        )
        assert v.conditional
        assert v.model_dump(mode="json")["verdict"] == "NOT_GALOIS"

    def test_unknown_needs_nothing(self):
        """Testa que UNKNOWN não exige evidência."""
        v = _verdict(verdict=Verdict.UNKNOWN, degree=None, subgroup_order=2, evidence=Evidence(kind="none"))
        assert v.degree is None

    def test_with_line(self):
        """Testa que a reta anexada não entra na serialização."""
        v = _verdict().with_line("reta")
        assert v.line == "reta"
        assert "line" not in v.model_dump()


class TestRunConfig:
    """Testes para o modelo RunConfig."""

    def test_defaults(self):
        """Testa valores padrão."""
        run = RunConfig(q=2)
        assert run.m_max == 3
        assert run.seed == 0x6B6B
        assert run.format == "json"

    @pytest.mark.parametrize(
        "field,value,message",
        [
            ("q", 7, "q deve ser um de"),
            ("jobs", 0, "maior ou igual a 1"),
            ("m_max", 0, "maior ou igual a 1"),
            ("sample", -1, "não pode ser negativa"),
            ("format", "xml", "Formato deve ser um dos"),
            ("backend", "threads", "Backend deve ser um dos"),
        ],
    )
    def test_invalid_values(self, field, value, message):
        """Testa rejeição de valores inválidos."""
        data = {"q": 2, field: value}
        with pytest.raises(ValueError, match=message):
            RunConfig(**data)

    def test_embedded_excludes_execution_fields(self):
        """Testa que campos de execução e o diretório não entram no relatório."""
        embedded = RunConfig(q=3, jobs=8, backend="celery", output="/tmp/outro", chunk_size=7).embedded()
        assert "jobs" not in embedded
        assert "backend" not in embedded
        assert "output" not in embedded
        assert "chunk_size" not in embedded
        assert embedded["q"] == 3

    def test_frozen(self):
        """Testa imutabilidade."""
        run = RunConfig(q=2)
        with pytest.raises(ValueError):
            run.q = 3


class TestReports:
    """Testes dos relatórios."""

    def test_lemma_report(self):
        """Testa aprovação e primeira falha."""
        report = LemmaReport(
            q=2,
            version="1.0.0",
            config={},
            results=[
                LemmaResult(name="a", passed=True),
                LemmaResult(name="b", passed=False),
                LemmaResult(name="c", passed=False),
            ],
        )
        assert not report.passed
        assert report.first_failure == "b"
        assert "FAIL b" in report.summary_text()
        assert [r["name"] for r in report.rows()] == ["a", "b", "c"]

    def test_group_report_rows(self):
        """Testa a linha tabular do relatório de grupo."""
        report = GroupReport(
            q=2,
            version="1.0.0",
            config={},
            parameters={"rho": "[0]"},
            generators=[],
            orders={"G1": 8, "G2": 9, "eta": 3, "G3": 6, "full": 648},
            hermitian_orbits=[9],
            doubly_transitive=True,
            g1_g2_trivial=True,
            faithful=True,
            expected_linear_order=648,
            checks={"order_g1": True},
        )
        (row,) = report.rows()
        assert row["order_full"] == 648
        assert row["check_order_g1"] is True
        assert row["orbits"] == "9"
        assert "|Aut| = 648" in report.summary_text()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
