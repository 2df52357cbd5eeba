"""
Testes da geometria projetiva em P³.

Este módulo testa:
- Formas canônicas de pontos, planos e retas
- Coordenadas de Plücker e incidência
- Enumeração de pontos e retas e seus limites
- Mergulhos e ação de matrizes
"""

import pytest
import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.errors import (
    DegenerateConfigurationError,
    EnumerationGuardError,
    FieldMismatchError,
    PluckerRelationError,
)
from gkgalois.ff import FieldTower, make_field
from gkgalois.projgeom import (
    CONTAINED,
    Line,
    Plane,
    ProjPoint,
    count_lines,
    count_points,
    embed_line,
    enumerate_lines,
    enumerate_points,
    is_rational_over,
    line_meet_plane,
    line_through,
    lines_meet,
    meet_plane_plane,
    pencil_of_planes,
    plucker_relation,
    point_array,
    points_on_line,
    rref,
    span_line_point,
    vencode,
    vnormalize,
)


@pytest.fixture
def F4():
    return make_field(2, 2)


class TestCanonicalForms:
    """Testes para normalização."""

    def test_point_normalization(self, F4):
        """Testa que a primeira coordenada não nula vira 1."""
        P = ProjPoint.of(F4, (0, 2, 3, 1))
        assert P.coords[0] == 0
        assert P.coords[1] == 1
        assert P.coords[2] == F4.div(3, 2)
        assert P.dim == 3

    def test_scalar_multiples_are_equal(self, F4):
        """Testa que múltiplos escalares definem o mesmo ponto e o mesmo plano."""
        v = (1, 2, 0, 3)
        for s in range(1, F4.order):
            w = tuple(F4.mul(s, c) for c in v)
            assert ProjPoint.of(F4, w) == ProjPoint.of(F4, v)
            assert Plane.of(F4, w) == Plane.of(F4, v)

    def test_zero_vector(self, F4):
        """Testa rejeição do vetor nulo."""
        with pytest.raises(DegenerateConfigurationError, match="vetor nulo"):
            ProjPoint.of(F4, (0, 0, 0, 0))

    def test_vnormalize_matches_scalar(self):
        """Testa normalização vetorizada contra a escalar."""
        F = make_field(3, 2)
        rng = np.random.default_rng(3)
        arr = rng.integers(0, F.order, size=(200, 4))
        arr = arr[np.any(arr != 0, axis=1)]
        out = vnormalize(F, arr)
        for row, norm in zip(arr, out):
            assert tuple(norm.tolist()) == ProjPoint.of(F, row).coords


class TestLines:
    """Testes para retas e coordenadas de Plücker."""

    def test_line_independent_of_span(self, F4):
        """Testa que a reta não depende do par de pontos escolhido."""
        P = ProjPoint.of(F4, (1, 0, 0, 0))
        Q = ProjPoint.of(F4, (0, 1, 0, 0))
        line = line_through(P, Q)
        pts = points_on_line(line)
        assert len(pts) == F4.order + 1
        for A in pts:
            for B in pts:
                if A != B:
                    assert line_through(A, B) == line

    def test_plucker_relation(self, F4):
        """Testa que toda reta satisfaz a relação de Plücker."""
        for line in enumerate_lines(F4):
            assert plucker_relation(F4, line.plucker) == 0

    def test_construction_rejects_invalid_plucker(self, F4):
        """Testa que a construção de uma reta confere a relação de Plücker."""
        P = ProjPoint.of(F4, (1, 0, 0, 0))
        Q = ProjPoint.of(F4, (0, 1, 0, 0))
        with pytest.raises(PluckerRelationError, match="relação de Plücker"):
            Line(F4, (1, 0, 0, 0, 0, 1), (P, Q))

    def test_equal_points(self, F4):
        """Testa erro para pontos iguais."""
        P = ProjPoint.of(F4, (1, 1, 0, 0))
        with pytest.raises(DegenerateConfigurationError, match="pontos iguais"):
            line_through(P, P)

    def test_planes_contain_line(self):
        """Testa que os dois planos da reta contêm os pontos geradores."""
        F = make_field(3, 2)
        line = line_through(ProjPoint.of(F, (1, 2, 0, 5)), ProjPoint.of(F, (0, 1, 7, 3)))
        for H in line.planes:
            for P in line.span:
                assert H.contains(P)
        assert meet_plane_plane(*line.planes) == line

    def test_lines_meet(self, F4):
        """Testa o emparelhamento de Plücker."""
        O = ProjPoint.of(F4, (1, 0, 0, 0))
        a = line_through(O, ProjPoint.of(F4, (0, 1, 0, 0)))
        b = line_through(O, ProjPoint.of(F4, (0, 0, 1, 0)))
        c = line_through(ProjPoint.of(F4, (0, 0, 1, 0)), ProjPoint.of(F4, (0, 0, 0, 1)))
        d = line_through(ProjPoint.of(F4, (0, 1, 0, 0)), ProjPoint.of(F4, (0, 0, 0, 1)))
        assert lines_meet(a, b)
        assert lines_meet(b, c)
        assert not lines_meet(a, c)
        assert lines_meet(a, d)

    def test_line_meet_plane(self, F4):
        """Testa interseção de reta com plano e o caso de reta contida."""
        line = line_through(ProjPoint.of(F4, (1, 0, 0, 0)), ProjPoint.of(F4, (0, 1, 0, 0)))
        W = Plane.of(F4, (0, 0, 0, 1))
        X = Plane.of(F4, (1, 0, 0, 0))
        assert line_meet_plane(line, W) == CONTAINED
        assert line_meet_plane(line, X) == ProjPoint.of(F4, (0, 1, 0, 0))

    def test_span_line_point(self, F4):
        """Testa o plano gerado por reta e ponto."""
        line = line_through(ProjPoint.of(F4, (1, 0, 0, 0)), ProjPoint.of(F4, (0, 1, 0, 0)))
        H = span_line_point(line, ProjPoint.of(F4, (0, 0, 1, 0)))
        assert H == Plane.of(F4, (0, 0, 0, 1))
        with pytest.raises(DegenerateConfigurationError, match="está sobre a reta"):
            span_line_point(line, ProjPoint.of(F4, (1, 1, 0, 0)))

    def test_pencil_size(self, F4):
        """Testa que o feixe de planos tem |F|+1 membros, todos contendo a reta."""
        line = line_through(ProjPoint.of(F4, (1, 0, 0, 0)), ProjPoint.of(F4, (0, 1, 2, 0)))
        pencil = pencil_of_planes(line)
        assert len(pencil) == F4.order + 1
        assert all(H.contains(P) for H in pencil for P in line.span)


class TestEnumeration:
    """Testes de enumeração."""

    @pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1)])
    def test_counts(self, p, k):
        """Testa contagem de pontos e retas de P³(F_s)."""
        F = make_field(p, k)
        s = F.order
        assert len(enumerate_points(F, 3)) == count_points(s)
        lines = list(enumerate_lines(F))
        assert len(lines) == count_lines(s)
        assert len(set(lines)) == len(lines)

    def test_point_array_normalized(self):
        """Testa que point_array devolve pontos distintos e canônicos."""
        F = make_field(3, 1)
        arr = point_array(F, 2)
        assert arr.shape == (13, 3)
        assert np.array_equal(vnormalize(F, arr), arr)
        assert len(np.unique(vencode(F, arr))) == 13

    def test_guard(self):
        """Testa o limite da enumeração."""
        with pytest.raises(EnumerationGuardError, match="excede o limite"):
            list(enumerate_lines(make_field(2, 7)))

    def test_lines_over_f9(self):
        """Testa a quantidade de retas sobre F_9."""
        assert count_lines(9) == 7462


class TestRationalityAndEmbedding:
    """Testes de racionalidade e mergulhos."""

    def test_embedded_line_is_rational(self):
        """Testa que retas mergulhadas de F_q² são racionais sobre F_q²."""
        tower = FieldTower(2, m_max=1)
        m = tower.map(tower.quad, tower.work)
        for line in list(enumerate_lines(tower.quad))[:50]:
            big = embed_line(line, m)
            assert is_rational_over(big, m)
            assert big.plucker == tuple(m(c) for c in line.plucker)

    def test_rationality_field_mismatch(self):
        """Testa erro quando o objeto não está no corpo de chegada."""
        tower = FieldTower(2, m_max=1)
        m = tower.map(tower.quad, tower.work)
        P = ProjPoint.of(tower.quad, (1, 0, 0, 0))
        with pytest.raises(FieldMismatchError):
            is_rational_over(P, m)

    def test_rref(self):
        """Testa forma escalonada reduzida."""
        F = make_field(3, 1)
        rows, pivots = rref(F, [[1, 2, 0], [2, 1, 0], [0, 0, 1]])
        assert pivots == [0, 2]
        assert rows == [[1, 2, 0], [0, 0, 1]]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
