"""
Testes da aritmética em corpos finitos.

Este módulo testa:
- Construção de corpos e validação de parâmetros
- Consistência entre operações escalares e vetorizadas
- Mergulhos da torre F_q ⊂ F_q² ⊂ F_q⁶ ⊂ F_q^(6m)
- Solucionadores de x^q + x = c, raízes da unidade e raízes de polinômios
"""

import pytest
import numpy as np

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.errors import (
    FieldMismatchError,
    FieldTooLargeError,
    NotPrimeError,
    UnsupportedParameterError,
)
from gkgalois.ff import (
    FieldElement,
    FieldTower,
    distinct_roots,
    embed,
    frobenius,
    make_field,
    poly_mul,
    prime_power,
    roots_of_unity,
    solve_additive,
    tower_map,
    univariate_roots,
)


class TestFieldConstruction:
    """Testes para construção de corpos."""

    def test_prime_power_decomposition(self):
        """Testa decomposição q = p^e."""
        assert prime_power(2) == (2, 1)
        assert prime_power(4) == (2, 2)
        assert prime_power(9) == (3, 2)
        assert prime_power(5) == (5, 1)

    def test_prime_power_invalid(self):
        """Testa rejeição de q que não é potência de primo."""
        with pytest.raises(UnsupportedParameterError, match="não é potência de primo"):
            prime_power(6)
        with pytest.raises(UnsupportedParameterError):
            prime_power(1)

    def test_make_field_not_prime(self):
        """Testa rejeição de característica composta."""
        with pytest.raises(NotPrimeError, match="não é primo"):
            make_field(4, 1)

    def test_make_field_too_large(self):
        """Testa limite de tabelas."""
        with pytest.raises(FieldTooLargeError, match="excede o limite"):
            make_field(2, 30)

    def test_make_field_cached(self):
        """Testa que o mesmo corpo é reaproveitado."""
        assert make_field(3, 2) is make_field(3, 2)

    def test_multiplicative_group_order(self):
        """Testa a^(|F|-1) = 1 para todo a ≠ 0."""
        for p, k in [(2, 2), (2, 6), (3, 2), (3, 6)]:
            F = make_field(p, k)
            assert all(F.pow(a, F.m) == 1 for a in range(1, F.order))

    def test_exp_log_bijection(self):
        """Testa que exp e log são inversas."""
        F = make_field(3, 6)
        assert sorted(F._exp[: F.m]) == list(range(1, F.order))
        assert all(F._exp[F._log[a]] == a for a in range(1, F.order))


class TestScalarArithmetic:
    """Testes para operações escalares."""

    @pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (5, 1)])
    def test_field_axioms(self, p, k):
        """Testa distributividade, inversos e opostos em corpos pequenos."""
        F = make_field(p, k)
        elems = range(F.order)
        for a in elems:
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in elems:
                assert F.add(a, b) == F.add(b, a)
                for c in elems:
                    left = F.mul(a, F.add(b, c))
                    right = F.add(F.mul(a, b), F.mul(a, c))
                    assert left == right

    def test_pow_of_zero(self):
        """Testa potências de zero."""
        F = make_field(2, 2)
        assert F.pow(0, 0) == 1
        assert F.pow(0, 5) == 0
        with pytest.raises(ZeroDivisionError):
            F.pow(0, -1)

    def test_inverse_of_zero(self):
        """Testa que zero não tem inverso."""
        F = make_field(3, 2)
        with pytest.raises(ZeroDivisionError, match="inverso de zero"):
            F.inv(0)

    def test_prime_constants_share_index(self):
        """Testa que as constantes de F_p têm o mesmo índice em toda a torre."""
        F = make_field(3, 6)
        assert F.const(1) == 1
        assert F.const(2) == 2
        assert F.add(1, 1) == 2
        assert F.add(2, 1) == 0

    def test_in_subfield(self):
        """Testa pertinência a subcorpos de F_64."""
        F = make_field(2, 6)
        quad = [a for a in range(F.order) if F.in_subfield(a, 2)]
        cubic = [a for a in range(F.order) if F.in_subfield(a, 3)]
        assert len(quad) == 4
        assert len(cubic) == 8
        assert set(quad) & set(cubic) == {0, 1}


class TestVectorArithmetic:
    """Testes de consistência entre operações vetorizadas e escalares."""

    @pytest.mark.parametrize("p,k", [(2, 6), (3, 2), (3, 6)])
    def test_vector_matches_scalar(self, p, k):
        """Testa vadd, vmul, vsub, vpow e vinv contra as versões escalares."""
        F = make_field(p, k)
        rng = np.random.default_rng(7)
        a = rng.integers(0, F.order, size=400)
        b = rng.integers(0, F.order, size=400)
        assert F.vadd(a, b).tolist() == [F.add(int(x), int(y)) for x, y in zip(a, b)]
        assert F.vsub(a, b).tolist() == [F.sub(int(x), int(y)) for x, y in zip(a, b)]
        assert F.vmul(a, b).tolist() == [F.mul(int(x), int(y)) for x, y in zip(a, b)]
        assert F.vpow(a, 5).tolist() == [F.pow(int(x), 5) for x in a]
        nz = a[a != 0]
        assert F.vinv(nz).tolist() == [F.inv(int(x)) for x in nz]

    def test_vscale_and_vdot(self):
        """Testa combinação linear com escalares fixos."""
        F = make_field(3, 2)
        rows = [np.arange(F.order), np.arange(F.order)[::-1]]
        out = F.vdot(rows, [2, 5])
        expected = [F.add(F.mul(2, int(x)), F.mul(5, int(y))) for x, y in zip(*rows)]
        assert out.tolist() == expected
        assert F.vscale(rows[0], 0).tolist() == [0] * F.order

    def test_vinv_rejects_zero(self):
        """Testa que vinv recusa zeros."""
        F = make_field(2, 2)
        with pytest.raises(ZeroDivisionError):
            F.vinv(np.array([1, 0, 2]))


class TestFieldElement:
    """Testes para o wrapper FieldElement."""

    def test_operators(self):
        """Testa operadores aritméticos e constantes inteiras."""
        F = make_field(3, 2)
        x = FieldElement(F, 3)
        assert (x + 0) == x
        assert (x - x).is_zero()
        assert (x * x.inverse()).value == 1
        assert (x / x).value == 1
        assert (x**F.m).value == 1
        assert (2 * x) == x + x
        assert (-x) + x == FieldElement(F, 0)

    def test_mismatched_fields(self):
        """Testa erro ao operar elementos de corpos distintos."""
        a = FieldElement(make_field(2, 2), 1)
        b = FieldElement(make_field(2, 6), 1)
        with pytest.raises(FieldMismatchError, match="sem mergulho"):
            a + b

    def test_frobenius(self):
        """Testa que o Frobenius de ordem q fixa exatamente F_q."""
        F = make_field(3, 2)
        fixed = [a for a in range(F.order) if frobenius(FieldElement(F, a), 3).value == a]
        assert len(fixed) == 3
        with pytest.raises(ValueError, match="não é potência"):
            frobenius(FieldElement(F, 1), 6)


class TestTowerMaps:
    """Testes para mergulhos entre corpos."""

    @pytest.mark.parametrize("q", [2, 3])
    def test_embedding_is_homomorphism(self, q):
        """Testa que F_q² → F_q⁶ preserva soma e produto."""
        tower = FieldTower(q, m_max=1)
        m = tower.map(tower.quad, tower.work)
        S, K = tower.quad, tower.work
        for a in range(S.order):
            assert K.in_subfield(m(a), S.k)
            for b in range(S.order):
                assert m(S.add(a, b)) == K.add(m(a), m(b))
                assert m(S.mul(a, b)) == K.mul(m(a), m(b))

    def test_embed_element(self):
        """Testa embed contra a tabela do mergulho e o erro de domínio."""
        tower = FieldTower(2, m_max=1)
        m = tower.map(tower.quad, tower.work)
        e = embed(FieldElement(tower.quad, 3), m)
        assert e.desc == tower.work
        assert e.value == m(3)
        with pytest.raises(FieldMismatchError, match="não é o domínio"):
            embed(e, m)

    def test_embedding_is_injective(self):
        """Testa injetividade do mergulho."""
        tower = FieldTower(3, m_max=1)
        m = tower.map(tower.quad, tower.work)
        assert len(set(m.table.tolist())) == tower.quad.order

    def test_paths_are_compatible(self):
        """Testa que F_q² → F_q⁶ → F_q¹² coincide com o mergulho direto na torre."""
        tower = FieldTower(2, m_max=2)
        ext = tower.field_for(2)
        direct = tower.map(tower.quad, ext)
        via = tower.map(tower.quad, tower.work).compose(tower.map(tower.work, ext))
        assert direct.table.tolist() == via.table.tolist()

    def test_identity_map(self):
        """Testa mergulho de um corpo nele mesmo."""
        tower = FieldTower(2, m_max=1)
        ident = tower.map(tower.work, tower.work)
        assert ident.embed_array([0, 5, 63]).tolist() == [0, 5, 63]

    def test_incompatible_fields(self):
        """Testa erro quando o grau não divide."""
        with pytest.raises(FieldMismatchError, match="não é subcorpo"):
            tower_map(make_field(2, 4), make_field(2, 6))

    def test_table_limit_caps_extensions(self):
        """Testa que m_max é reduzido pelo limite de tabelas."""
        tower = FieldTower(3, m_max=3)
        assert tower.m_max == 2
        assert tower.requested_m_max == 3
        assert tower.field_for(2).order == 3**12


class TestSolvers:
    """Testes dos solucionadores especiais."""

    @pytest.mark.parametrize("q", [2, 3])
    def test_solve_additive_counts(self, q):
        """Testa que x^q + x = c tem q soluções em F_q² para c ∈ F_q e nenhuma fora."""
        F = FieldTower(q, m_max=1).quad
        for c in range(F.order):
            sols = solve_additive(q, FieldElement(F, c), F)
            expected = q if F.in_subfield(c, F.k // 2) else 0
            assert len(sols) == expected
            for x in sols:
                assert F.add(F.pow(x.value, q), x.value) == c

    def test_solve_additive_wrong_field(self):
        """Testa erro quando c é de outro corpo."""
        with pytest.raises(FieldMismatchError):
            solve_additive(2, FieldElement(make_field(2, 2), 1), make_field(2, 6))

    @pytest.mark.parametrize("q", [2, 3])
    def test_roots_of_unity(self, q):
        """Testa as raízes (q+1)-ésimas em F_q² e (q³+1)-ésimas em F_q⁶."""
        tower = FieldTower(q, m_max=1)
        small = roots_of_unity(q + 1, tower.quad)
        big = roots_of_unity(q**3 + 1, tower.work)
        assert len(small) == q + 1
        assert len(big) == q**3 + 1
        assert all(z.desc.pow(z.value, q**3 + 1) == 1 for z in big)

    def test_univariate_roots_multiplicity(self):
        """Testa multiplicidades de (x − a)²(x − b)."""
        F = make_field(3, 2)
        a, b = 4, 7
        f = poly_mul(F, poly_mul(F, [F.neg(a), 1], [F.neg(a), 1]), [F.neg(b), 1])
        roots = {r.value: mult for r, mult in univariate_roots(f, F)}
        assert roots == {a: 2, b: 1}

    def test_univariate_roots_zero_poly(self):
        """Testa que o polinômio nulo é recusado."""
        with pytest.raises(ValueError, match="polinômio nulo"):
            univariate_roots([0, 0], make_field(2, 2))

    @pytest.mark.parametrize("scan_limit", [1 << 24, 1 << 10])
    def test_distinct_roots_large_field(self, scan_limit, monkeypatch):
        """Testa raízes em F_2^18 por varredura e por Cantor-Zassenhaus."""
        monkeypatch.setattr("gkgalois.ff.SCAN_LIMIT", scan_limit)
        F = make_field(2, 18)
        roots = [3, 1000, 200001]
        f = [1]
        for r in roots:
            f = poly_mul(F, f, [r, 1])
        f = poly_mul(F, f, [0, 0, 1, 1])  # x²(x + 1) contribui 0 e 1
        assert sorted(distinct_roots(F, f)) == sorted(roots + [0, 1])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
