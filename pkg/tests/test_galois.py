"""
Testes da decisão de retas de Galois, da varredura e do censo de pontos.

Este módulo testa:
- Veredictos das retas nomeadas e de uma reta fora da classificação
- Varredura completa das retas sobre F_4 (q = 2)
- Censo de pontos de Galois do modelo plano
- Riemann–Hurwitz manso para ℓ₀
"""

import pytest

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.galois import (
    classify_chunk,
    decomposition_subgroup,
    get_context,
    in_plane_z,
    is_galois,
    orbit_of_line,
    pencil_triple,
    plane_model_census,
    rh_check_tame,
    sample_lines,
    sweep,
    theorem_predicate,
    verify_galois,
)
from gkgalois.models import GaloisVerdict, Verdict
from gkgalois.projgeom import ProjPoint, line_through


@pytest.fixture(scope="module")
def table2(ctx2):
    return sweep(ctx2, config={"q": 2})


def _quad_line(ctx, a, b):
    quad = ctx.curve.tower.quad
    return line_through(ProjPoint.of(quad, a), ProjPoint.of(quad, b))


class TestNamedLines:
    """Testes de veredictos para retas conhecidas."""

    def test_line_at_infinity(self, ctx2):
        """Testa que ℓ∞ é de Galois com grau q³."""
        curve = ctx2.curve
        v = is_galois(curve, curve.line_inf, ctx2.group, ctx2.m_max)
        assert v.verdict == Verdict.GALOIS
        assert v.degree == 8
        assert v.subgroup_order == 8
        assert v.evidence.kind == "subgroup"
        assert len(v.evidence.elements) == 8
        assert verify_galois(curve, v, ctx2.group)

    def test_line_zero(self, ctx2):
        """Testa que ℓ₀ é de Galois com grau q³+1 e sem contatos."""
        curve = ctx2.curve
        v = is_galois(curve, curve.line_0, ctx2.group, ctx2.m_max)
        assert v.verdict == Verdict.GALOIS
        assert v.degree == 9
        assert v.contacts == []
        assert v.predicate

    def test_line_outside_classification(self, ctx2):
        """Testa uma reta por P∞ que não passa por R' nem está em {Z=0}."""
        line = _quad_line(ctx2, (1, 0, 0, 0), (0, 0, 1, 1))
        v = is_galois(ctx2.curve, line, ctx2.group, ctx2.m_max)
        assert v.verdict == Verdict.NOT_GALOIS
        assert not v.predicate
        assert v.rational
        assert v.evidence.witness is not None or v.conditional

    def test_predicate(self, ctx2):
        """Testa o predicado da classificação."""
        curve = ctx2.curve
        assert theorem_predicate(curve, curve.line_0)
        assert theorem_predicate(curve, curve.line_inf)
        assert in_plane_z(curve.line_inf)
        assert not theorem_predicate(curve, _quad_line(ctx2, (1, 0, 0, 0), (0, 0, 1, 1)))

    def test_decomposition_subgroup(self, ctx2):
        """Testa que G_ℓ fixa três membros do feixe de ℓ."""
        curve = ctx2.curve
        sub = decomposition_subgroup(curve.line_inf, ctx2.group)
        assert sub.order == 8
        triple = pencil_triple(curve.line_inf)
        assert len(set(triple)) == 3
        assert all(g(H) == H for g in sub for H in triple)

    def test_orbit_of_line_at_infinity(self, ctx2):
        """Testa que a órbita de ℓ∞ tem q³+1 retas."""
        assert len(orbit_of_line(ctx2.group, ctx2.curve.line_inf)) == 9


class TestChunks:
    """Testes do processamento em lotes."""

    def test_classify_chunk_serializes(self, ctx2):
        """Testa que os lotes devolvem veredictos validáveis na ordem pedida."""
        raw = classify_chunk(ctx2, [0, 1, 2])
        assert len(raw) == 3
        verdicts = [GaloisVerdict.model_validate(r) for r in raw]
        for idx, v in zip([0, 1, 2], verdicts):
            assert v.plucker == ctx2.item(idx).to_json()["plucker"]

    def test_sample_lines(self, ctx2):
        """Testa que as retas sorteadas são distintas e não racionais."""
        lines = sample_lines(ctx2.curve, 4, seed=9)
        assert len(set(lines)) == 4
        assert all(line.field == ctx2.curve.work for line in lines)

    def test_context_is_cached(self, ctx2):
        """Testa que o contexto é construído uma vez por processo."""
        assert get_context(2, m_max=3, sample=0) is ctx2


class TestSweepQ2:
    """Testes da varredura completa para q = 2."""

    def test_counts(self, table2):
        """Testa 357 retas, 42 de Galois e a distribuição por grau."""
        s = table2.summary
        assert len(table2.lines) == 357
        assert s.galois_total == 42
        assert s.by_degree == {"6": 21, "8": 9, "9": 12}
        assert s.through_r_prime == 21
        assert s.in_plane_z == 21
        assert s.empty_through_r_prime == 12

    def test_no_mismatch_or_unknown(self, table2):
        """Testa concordância com a classificação e ausência de UNKNOWN."""
        assert table2.summary.mismatches == []
        assert table2.summary.unknown == 0

    def test_checks(self, table2):
        """Testa as verificações internas da varredura."""
        checks = table2.summary.checks
        assert set(checks) >= {"orbit_line_inf", "eta_intersection", "equivariance", "galois_soundness"}
        assert all(checks.values()), {k: v for k, v in checks.items() if not v}

    def test_runner_matches_inline(self, ctx2, table2):
        """Testa que um runner externo produz a mesma tabela."""
        other = sweep(ctx2, runner=lambda idx: classify_chunk(ctx2, idx))
        assert [v.verdict for v in other.lines] == [v.verdict for v in table2.lines]
        assert other.summary == table2.summary

    def test_rows_and_summary_text(self, table2):
        """Testa as linhas tabulares e o resumo textual."""
        rows = table2.rows()
        assert len(rows) == 357
        assert {r["stratum"] for r in rows} == {"rational"}
        assert "retas de Galois: 42" in table2.summary_text()


class TestCensusQ2:
    """Testes do censo de pontos de Galois de X'."""

    def test_census(self, ctx2, table2):
        """Testa q+1 pontos internos lisos, um externo e as verificações."""
        report = plane_model_census(ctx2, table2)
        s = report.summary
        assert s.inner_smooth == 3
        assert s.outer == 1
        assert s.mismatches == []
        assert all(s.checks.values()), {k: v for k, v in s.checks.items() if not v}
        outer = [p for p in report.points if p.tag == "outer" and p.verdict == Verdict.GALOIS]
        assert len(outer) == 1
        assert outer[0].degree == 9


class TestRiemannHurwitz:
    """Testes de Riemann–Hurwitz manso para ℓ₀."""

    def test_q2(self, ctx2):
        """Testa Σ(e − 1) = 36 e a identidade 2g − 2 = −2d + Σ(e − 1)."""
        report = rh_check_tame(ctx2.curve)
        assert report.degree == 9
        assert report.genus == 10
        assert report.complete
        assert report.tame
        assert report.sum_e_minus_1 == 36
        assert report.holds is True
        assert report.lhs == report.rhs == 18

    def test_partial_search(self, ctx2):
        """Testa que uma busca rasa não avalia a identidade quando faltam fibras."""
        report = rh_check_tame(ctx2.curve, m_max=1)
        if not report.complete:
            assert report.holds is None
            assert report.notice
        else:
            assert report.holds is True


@pytest.mark.slow
class TestQ3:
    """Testes para q = 3."""

    def test_sweep(self):
        """Testa 182 retas de Galois sobre F_9, 63 vazias por R'."""
        ctx = get_context(3, m_max=2, sample=0)
        table = sweep(ctx)
        s = table.summary
        assert len(table.lines) == 7462
        assert s.galois_total == 182
        assert s.through_r_prime == 91
        assert s.in_plane_z == 91
        assert s.empty_through_r_prime == 63
        assert s.mismatches == []

    def test_rh(self):
        """Testa Σ(e − 1) = 252 para q = 3."""
        ctx = get_context(3, m_max=2, sample=0)
        report = rh_check_tame(ctx.curve)
        assert report.sum_e_minus_1 == 252
        assert report.holds is True


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
