"""
Polinômios multivariados esparsos e séries de potências truncadas.

Coeficientes são índices de um FieldDesc. Termos ficam em ordem graduada
lexicográfica; potências usam os dígitos do expoente na base p e Frobenius
termo a termo.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegenerateConfigurationError, FieldMismatchError
from .ff import (
    FieldDesc,
    FieldElement,
    TowerMap,
    poly_add,
    poly_divmod,
    poly_mul,
    poly_scale,
    poly_sub,
    poly_trim,
)

Exponent = Tuple[int, ...]
Coordinate = Union[int, FieldElement]


def _term_order(exp: Exponent) -> Tuple[int, Tuple[int, ...]]:
    return (-sum(exp), tuple(-e for e in exp))


def _digits(e: int, p: int) -> List[int]:
    out = []
    while e:
        e, d = divmod(e, p)
        out.append(d)
    return out


def _as_index(F: FieldDesc, c: Coordinate) -> int:
    if isinstance(c, FieldElement):
        if c.desc != F:
            raise FieldMismatchError(f"coordenada em {c.desc.name}, esperado {F.name}")
        return c.value
    return int(c)


@dataclass(frozen=True)
class MultiPoly:
    """Polinômio esparso; `terms` é uma tupla ordenada de (expoente, coeficiente)."""

    field: FieldDesc
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Exponent, int], ...]

    # -- construção ---------------------------------------------------------

    @classmethod
    def from_dict(
        cls, F: FieldDesc, variables: Sequence[str], terms: Mapping[Exponent, int]
    ) -> "MultiPoly":
        items = [(tuple(e), int(c)) for e, c in terms.items() if c]
        for e, _ in items:
            if len(e) != len(variables):
                raise ValueError("expoente com aridade diferente das variáveis")
        items.sort(key=lambda ec: _term_order(ec[0]))
        return cls(F, tuple(variables), tuple(items))

    @classmethod
    def constant(cls, F: FieldDesc, variables: Sequence[str], c: int) -> "MultiPoly":
        return cls.from_dict(F, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, F: FieldDesc, variables: Sequence[str], name: str) -> "MultiPoly":
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise ValueError(f"variável desconhecida: {name}")
        return cls.from_dict(F, variables, {exp: 1})

    @classmethod
    def gens(cls, F: FieldDesc, variables: Sequence[str]) -> Tuple["MultiPoly", ...]:
        return tuple(cls.variable(F, variables, v) for v in variables)

    @cached_property
    def as_dict(self) -> Dict[Exponent, int]:
        return dict(self.terms)

    # -- propriedades -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        return max((e[i] for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    # -- aritmética ---------------------------------------------------------

    def _coerce(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.variables != self.variables:
                raise FieldMismatchError("polinômios em anéis diferentes")
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.field, self.variables, self.field.const(other))
        raise TypeError(f"operando não suportado: {type(other).__name__}")

    def __add__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        other = self._coerce(other)
        F = self.field
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = F.add(acc.get(e, 0), c)
        return MultiPoly.from_dict(F, self.variables, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        F = self.field
        return MultiPoly.from_dict(F, self.variables, {e: F.neg(c) for e, c in self.terms})

    def __sub__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: int) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        other = self._coerce(other)
        F = self.field
        acc: Dict[Exponent, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = F.add(acc.get(e, 0), F.mul(c1, c2))
        return MultiPoly.from_dict(F, self.variables, acc)

    __rmul__ = __mul__

    def scale(self, c: int) -> "MultiPoly":
        F = self.field
        return MultiPoly.from_dict(F, self.variables, {e: F.mul(v, c) for e, v in self.terms})

    def frobenius_power(self, r: int) -> "MultiPoly":
        """f^(p^r): expoentes multiplicados, coeficientes elevados a p^r."""
        F = self.field
        pr = F.p**r
        return MultiPoly.from_dict(
            F,
            self.variables,
            {tuple(x * pr for x in e): F.pow(c, pr) for e, c in self.terms},
        )

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("expoente negativo")
        result = MultiPoly.constant(self.field, self.variables, 1)
        for r, d in enumerate(_digits(e, self.field.p)):
            if d == 0:
                continue
            base = self.frobenius_power(r)
            for _ in range(d):
                result = result * base
        return result

    # -- cálculo ------------------------------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        """Derivada formal; em característica p, d/dx x^(kp) = 0."""
        i = self.variables.index(var)
        F = self.field
        acc: Dict[Exponent, int] = {}
        for e, c in self.terms:
            k = e[i] % F.p
            if k == 0:
                continue
            new = list(e)
            new[i] -= 1
            acc[tuple(new)] = F.mul(c, F.const(k))
        return MultiPoly.from_dict(F, self.variables, acc)

    def gradient(self) -> Tuple["MultiPoly", ...]:
        return tuple(self.derivative(v) for v in self.variables)

    # -- avaliação ----------------------------------------------------------

    def eval_index(self, point: Sequence[Coordinate]) -> int:
        if len(point) != len(self.variables):
            raise ValueError(
                f"aridade {len(point)} incompatível com {len(self.variables)} variáveis"
            )
        F = self.field
        xs = [_as_index(F, c) for c in point]
        acc = 0
        for e, c in self.terms:
            t = c
            for x, k in zip(xs, e):
                if k:
                    t = F.mul(t, F.pow(x, k))
                    if t == 0:
                        break
            acc = F.add(acc, t)
        return acc

    def eval(self, point: Sequence[Coordinate]) -> FieldElement:
        return FieldElement(self.field, self.eval_index(point))

    def veval(self, columns: Sequence[np.ndarray]) -> np.ndarray:
        """Avalia em muitos pontos; `columns[i]` traz os valores da i-ésima variável."""
        F = self.field
        cols = [np.asarray(c, dtype=np.int64) for c in columns]
        if len(cols) != len(self.variables):
            raise ValueError("número de colunas incompatível com as variáveis")
        cache: Dict[Tuple[int, int], np.ndarray] = {}
        acc = np.zeros_like(cols[0])
        for e, c in self.terms:
            t = np.full_like(cols[0], c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = F.vpow(cols[i], k)
                    t = F.vmul(t, cache[key])
            acc = F.vadd(acc, t)
        return acc

    def eval_series(self, series: Sequence["TruncSeries"]) -> "TruncSeries":
        if len(series) != len(self.variables):
            raise ValueError("número de séries incompatível com as variáveis")
        F = self.field
        N = series[0].precision
        cache: Dict[Tuple[int, int], TruncSeries] = {}
        acc = TruncSeries.zero(F, N)
        for e, c in self.terms:
            t = TruncSeries.constant(F, c, N)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = series[i] ** k
                    t = t * cache[key]
            acc = acc + t
        return acc

    # -- mudança de anel ----------------------------------------------------

    def substitute(self, var: str, value: int) -> "MultiPoly":
        """Fixa uma variável num valor e a remove do anel."""
        i = self.variables.index(var)
        F = self.field
        rest = self.variables[:i] + self.variables[i + 1 :]
        acc: Dict[Exponent, int] = {}
        for e, c in self.terms:
            v = F.mul(c, F.pow(value, e[i]))
            key = e[:i] + e[i + 1 :]
            acc[key] = F.add(acc.get(key, 0), v)
        return MultiPoly.from_dict(F, rest, acc)

    def dehomogenize(self, var: str) -> "MultiPoly":
        return self.substitute(var, 1)

    def homogenize(self, var: str, position: Optional[int] = None) -> "MultiPoly":
        pos = len(self.variables) if position is None else position
        deg = self.degree
        names = self.variables[:pos] + (var,) + self.variables[pos:]
        acc = {e[:pos] + (deg - sum(e),) + e[pos:]: c for e, c in self.terms}
        return MultiPoly.from_dict(self.field, names, acc)

    def compose(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitui cada variável por um polinômio (todos no mesmo anel)."""
        if len(images) != len(self.variables):
            raise ValueError("número de imagens incompatível com as variáveis")
        target = images[0]
        acc = MultiPoly.from_dict(self.field, target.variables, {})
        cache: Dict[Tuple[int, int], MultiPoly] = {}
        for e, c in self.terms:
            t = MultiPoly.constant(self.field, target.variables, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            acc = acc + t
        return acc

    def restrict_to_span(
        self, basis: Sequence[Sequence[int]], names: Sequence[str]
    ) -> "MultiPoly":
        """Restrição ao subespaço gerado por `basis`: x = Σ names[j]·basis[j]."""
        F = self.field
        k = len(names)
        images = []
        for i in range(len(self.variables)):
            terms = {}
            for j in range(k):
                if basis[j][i]:
                    exp = tuple(1 if t == j else 0 for t in range(k))
                    terms[exp] = basis[j][i]
            images.append(MultiPoly.from_dict(F, names, terms))
        return self.compose(images)

    def map_coefficients(self, m: TowerMap) -> "MultiPoly":
        if m.src != self.field:
            raise FieldMismatchError("mergulho não parte do corpo do polinômio")
        return MultiPoly.from_dict(m.dst, self.variables, {e: m(c) for e, c in self.terms})

    def univariate(self) -> List[int]:
        """Coeficientes (do constante ao líder) de um polinômio em uma variável."""
        if len(self.variables) != 1:
            raise ValueError("polinômio não é univariado")
        deg = max(self.degree, 0)
        out = [0] * (deg + 1)
        for e, c in self.terms:
            out[e[0]] = c
        return poly_trim(out)

    def coefficients_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """Decomposição f = Σ c_k(outras)·var^k."""
        i = self.variables.index(var)
        rest = self.variables[:i] + self.variables[i + 1 :]
        groups: Dict[int, Dict[Exponent, int]] = {}
        for e, c in self.terms:
            groups.setdefault(e[i], {})[e[:i] + e[i + 1 :]] = c
        return {k: MultiPoly.from_dict(self.field, rest, d) for k, d in groups.items()}

    # -- texto --------------------------------------------------------------

    def _coeff_text(self, c: int) -> str:
        F = self.field
        if c < F.p:
            return str(c)
        return F.text(c)

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = " ".join(f"{v}^{k}" for v, k in zip(self.variables, e) if k)
            parts.append(f"{self._coeff_text(c)}*{mono}" if mono else self._coeff_text(c))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.text()


def jacobian(fs: Sequence[MultiPoly], point: Sequence[Coordinate]) -> List[List[FieldElement]]:
    """Matriz (∂f_i/∂x_j)(point)."""
    return [[d.eval(point) for d in f.gradient()] for f in fs]


def matrix_rank(F: FieldDesc, rows: Sequence[Sequence[Coordinate]]) -> int:
    from .projgeom import rref

    mat = [[_as_index(F, c) for c in row] for row in rows]
    if not mat:
        return 0
    reduced, _ = rref(F, mat)
    return len(reduced)


# ---------------------------------------------------------------------------
# Resultantes
# ---------------------------------------------------------------------------


def _poly_exact_div(F: FieldDesc, a: List[int], b: List[int]) -> List[int]:
    quot, rem = poly_divmod(F, a, b)
    if rem:
        raise DegenerateConfigurationError("divisão de Bareiss não exata")
    return quot


def _det_bareiss(F: FieldDesc, mat: List[List[List[int]]]) -> List[int]:
    """Determinante de matriz com entradas em F[y], eliminação sem frações."""
    n = len(mat)
    m = [[list(x) for x in row] for row in mat]
    sign = 1
    prev: List[int] = [1]
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(F, poly_mul(F, m[k][k], m[i][j]), poly_mul(F, m[i][k], m[k][j]))
                m[i][j] = _poly_exact_div(F, num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else poly_scale(F, det, F.neg(1))


def resultant_elim(f: MultiPoly, g: MultiPoly, eliminate: str) -> MultiPoly:
    """
    Resultante de f e g em relação a `eliminate` (matriz de Sylvester).

    Args:
        f, g: polinômios em duas variáveis sobre o mesmo corpo
        eliminate: variável eliminada

    Returns:
        Polinômio univariado na variável restante. Raízes podem incluir
        artefatos de coeficiente líder; quem chama deve verificar por substituição.
    """
    if f.field != g.field or f.variables != g.variables:
        raise FieldMismatchError("resultante entre anéis diferentes")
    if len(f.variables) != 2:
        raise ValueError("resultant_elim exige duas variáveis")
    if f.is_zero() or g.is_zero():
        raise DegenerateConfigurationError("resultante com polinômio nulo")
    F = f.field
    other = next(v for v in f.variables if v != eliminate)
    m, n = f.degree_in(eliminate), g.degree_in(eliminate)
    if m < 1 or n < 1:
        raise DegenerateConfigurationError(f"grau nulo em {eliminate}")

    def coeff_lists(h: MultiPoly, d: int) -> List[List[int]]:
        parts = h.coefficients_in(eliminate)
        return [parts[k].univariate() if k in parts else [] for k in range(d, -1, -1)]

    fc, gc = coeff_lists(f, m), coeff_lists(g, n)
    size = m + n
    sylvester: List[List[List[int]]] = []
    for r in range(n):
        sylvester.append([[] for _ in range(r)] + fc + [[] for _ in range(size - r - m - 1)])
    for r in range(m):
        sylvester.append([[] for _ in range(r)] + gc + [[] for _ in range(size - r - n - 1)])
    det = _det_bareiss(F, sylvester)
    return MultiPoly.from_dict(F, (other,), {(i,): c for i, c in enumerate(det) if c})


# ---------------------------------------------------------------------------
# Séries truncadas
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncSeries:
    """Série Σ c_i t^i, i < precision."""

    field: FieldDesc
    coeffs: Tuple[int, ...]

    @classmethod
    def zero(cls, F: FieldDesc, N: int) -> "TruncSeries":
        return cls(F, (0,) * N)

    @classmethod
    def constant(cls, F: FieldDesc, c: int, N: int) -> "TruncSeries":
        return cls(F, (c,) + (0,) * (N - 1))

    @classmethod
    def from_list(cls, F: FieldDesc, cs: Iterable[int], N: int) -> "TruncSeries":
        cs = list(cs)[:N]
        return cls(F, tuple(cs) + (0,) * (N - len(cs)))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def valuation(self) -> Optional[int]:
        """Índice do primeiro coeficiente não nulo; None significa ≥ N."""
        return next((i for i, c in enumerate(self.coeffs) if c), None)

    def truncate(self, N: int) -> "TruncSeries":
        return TruncSeries.from_list(self.field, self.coeffs, N)

    def _check(self, other: "TruncSeries") -> None:
        if other.field != self.field or other.precision != self.precision:
            raise FieldMismatchError("séries incompatíveis")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        F = self.field
        return TruncSeries(
            F, tuple(int(v) for v in F.vadd(np.array(self.coeffs), np.array(other.coeffs)))
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(
            self.field, tuple(int(v) for v in self.field.vneg(np.array(self.coeffs)))
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def scale(self, c: int) -> "TruncSeries":
        return TruncSeries(
            self.field, tuple(int(v) for v in self.field.vscale(np.array(self.coeffs), c))
        )

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        F = self.field
        N = self.precision
        b = np.array(other.coeffs, dtype=np.int64)
        acc = np.zeros(N, dtype=np.int64)
        for i, a in enumerate(self.coeffs):
            if a:
                acc[i:] = F.vadd(acc[i:], F.vscale(b[: N - i], a))
        return TruncSeries(F, tuple(int(v) for v in acc))

    def frobenius_power(self, r: int) -> "TruncSeries":
        """s^(p^r): coeficientes elevados e espaçados."""
        F = self.field
        pr = F.p**r
        out = [0] * self.precision
        for i, c in enumerate(self.coeffs):
            j = i * pr
            if j >= self.precision:
                break
            out[j] = F.pow(c, pr)
        return TruncSeries(F, tuple(out))

    def __pow__(self, e: int) -> "TruncSeries":
        F = self.field
        result = TruncSeries.constant(F, 1, self.precision)
        for r, d in enumerate(_digits(e, F.p)):
            if d == 0:
                continue
            base = self.frobenius_power(r)
            for _ in range(d):
                result = result * base
        return result

    def reciprocal(self) -> "TruncSeries":
        """Inverso de uma unidade (coeficiente constante não nulo)."""
        F = self.field
        if not self.coeffs[0]:
            raise ZeroDivisionError("série sem termo constante não é invertível")
        N = self.precision
        inv0 = F.inv(self.coeffs[0])
        out = [inv0] + [0] * (N - 1)
        for n in range(1, N):
            acc = 0
            for k in range(1, n + 1):
                if self.coeffs[k] and out[n - k]:
                    acc = F.add(acc, F.mul(self.coeffs[k], out[n - k]))
            out[n] = F.neg(F.mul(acc, inv0))
        return TruncSeries(F, tuple(out))
