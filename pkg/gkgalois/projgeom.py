"""
Pontos, retas e planos de P³ (e pontos de P²) sobre corpos da torre.

Formas canônicas: a primeira coordenada não nula vale 1. Retas guardam as
coordenadas de Plücker normalizadas, na ordem (01, 02, 03, 12, 13, 23),
junto com um par gerador em cache.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    DegenerateConfigurationError,
    EnumerationGuardError,
    FieldMismatchError,
    PluckerRelationError,
)
from .ff import FieldDesc, FieldElement, TowerMap

DEFAULT_ENUMERATION_CAP = 81
PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
CONTAINED = "contained"


def normalize(F: FieldDesc, vec: Sequence[int]) -> Tuple[int, ...]:
    for c in vec:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(x, inv) for x in vec)
    raise DegenerateConfigurationError("vetor nulo não define objeto projetivo")


def _text_tuple(F: FieldDesc, vec: Sequence[int]) -> List[str]:
    return [F.text(c) for c in vec]


@dataclass(frozen=True)
class ProjPoint:
    """Ponto de P³ ou P² em forma canônica."""

    field: FieldDesc
    coords: Tuple[int, ...]

    @classmethod
    def of(cls, F: FieldDesc, coords: Sequence[int]) -> "ProjPoint":
        return cls(F, normalize(F, [int(c) for c in coords]))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    @property
    def elements(self) -> List[FieldElement]:
        return [FieldElement(self.field, c) for c in self.coords]

    @cached_property
    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.field.lex_key(c) for c in self.coords)

    def to_json(self) -> List[str]:
        return _text_tuple(self.field, self.coords)

    def __str__(self) -> str:
        return "(" + ":".join(self.to_json()) + ")"


@dataclass(frozen=True)
class Plane:
    """Plano de P³ dado pelas coordenadas duais canônicas."""

    field: FieldDesc
    coords: Tuple[int, ...]

    @classmethod
    def of(cls, F: FieldDesc, coords: Sequence[int]) -> "Plane":
        return cls(F, normalize(F, [int(c) for c in coords]))

    def evaluate(self, P: Union[ProjPoint, Sequence[int]]) -> int:
        coords = P.coords if isinstance(P, ProjPoint) else P
        F = self.field
        acc = 0
        for h, x in zip(self.coords, coords):
            if h and x:
                acc = F.add(acc, F.mul(h, x))
        return acc

    def contains(self, P: ProjPoint) -> bool:
        _same_field(self.field, P.field)
        return self.evaluate(P) == 0

    @cached_property
    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.field.lex_key(c) for c in self.coords)

    def to_json(self) -> List[str]:
        return _text_tuple(self.field, self.coords)

    def __str__(self) -> str:
        return "[" + ":".join(self.to_json()) + "]"


@dataclass(frozen=True)
class Line:
    """Reta de P³: Plücker normalizado mais um par gerador."""

    field: FieldDesc
    plucker: Tuple[int, ...]
    span: Tuple[ProjPoint, ProjPoint] = field(compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if __debug__ and plucker_relation(self.field, self.plucker) != 0:
            raise PluckerRelationError(f"relação de Plücker violada: {self.plucker}")

    @cached_property
    def sort_key(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(self.field.lex_key(c) for c in self.plucker)

    @cached_property
    def planes(self) -> Tuple[Plane, Plane]:
        """Par de planos (em RREF) cuja interseção é a reta."""
        rows = [list(self.span[0].coords), list(self.span[1].coords)]
        basis = nullspace(self.field, rows, 4)
        return Plane.of(self.field, basis[0]), Plane.of(self.field, basis[1])

    def contains(self, P: ProjPoint) -> bool:
        _same_field(self.field, P.field)
        return all(H.evaluate(P) == 0 for H in self.planes)

    def to_json(self) -> dict:
        return {
            "plucker": _text_tuple(self.field, self.plucker),
            "span": [self.span[0].to_json(), self.span[1].to_json()],
        }

    def __str__(self) -> str:
        return "<" + ",".join(_text_tuple(self.field, self.plucker)) + ">"


def _same_field(a: FieldDesc, b: FieldDesc) -> None:
    if a != b:
        raise FieldMismatchError(f"objetos em {a.name} e {b.name}")


# ---------------------------------------------------------------------------
# Álgebra linear
# ---------------------------------------------------------------------------


def rref(F: FieldDesc, rows: Sequence[Sequence[int]]) -> Tuple[List[List[int]], List[int]]:
    mat = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = F.inv(mat[r][c])
        mat[r] = [F.mul(x, inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(F: FieldDesc, rows: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    """Base do núcleo {x : rows·x = 0}, uma linha por variável livre."""
    reduced, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * n
        vec[fcol] = 1
        for row, pc in zip(reduced, pivots):
            vec[pc] = F.neg(row[fcol])
        basis.append(vec)
    return basis


def plucker_from_points(F: FieldDesc, P: Sequence[int], Q: Sequence[int]) -> Tuple[int, ...]:
    return tuple(F.sub(F.mul(P[i], Q[j]), F.mul(P[j], Q[i])) for i, j in PLUCKER_PAIRS)


def plucker_from_planes(F: FieldDesc, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    def w(i: int, j: int) -> int:
        return F.sub(F.mul(a[i], b[j]), F.mul(a[j], b[i]))

    return (w(2, 3), w(3, 1), w(1, 2), w(0, 3), w(2, 0), w(0, 1))


def plucker_pairing(F: FieldDesc, p: Sequence[int], q: Sequence[int]) -> int:
    """Zero se e somente se as duas retas se encontram."""
    terms = [
        F.mul(p[0], q[5]),
        F.neg(F.mul(p[1], q[4])),
        F.mul(p[2], q[3]),
        F.mul(p[3], q[2]),
        F.neg(F.mul(p[4], q[1])),
        F.mul(p[5], q[0]),
    ]
    acc = 0
    for t in terms:
        acc = F.add(acc, t)
    return acc


def plucker_relation(F: FieldDesc, p: Sequence[int]) -> int:
    return F.add(
        F.sub(F.mul(p[0], p[5]), F.mul(p[1], p[4])),
        F.mul(p[2], p[3]),
    )


def lines_meet(a: Line, b: Line) -> bool:
    _same_field(a.field, b.field)
    return plucker_pairing(a.field, a.plucker, b.plucker) == 0


# ---------------------------------------------------------------------------
# Construções
# ---------------------------------------------------------------------------


def line_through(P: ProjPoint, Q: ProjPoint) -> Line:
    _same_field(P.field, Q.field)
    if P == Q:
        raise DegenerateConfigurationError(f"pontos iguais: {P}")
    F = P.field
    plk = normalize(F, plucker_from_points(F, P.coords, Q.coords))
    span = tuple(sorted((P, Q), key=lambda x: x.sort_key))
    return Line(F, plk, span)  # type: ignore[arg-type]


def line_from_planes(H1: Plane, H2: Plane) -> Line:
    return meet_plane_plane(H1, H2)


def meet_plane_plane(H1: Plane, H2: Plane) -> Line:
    _same_field(H1.field, H2.field)
    if H1 == H2:
        raise DegenerateConfigurationError(f"planos iguais: {H1}")
    F = H1.field
    basis = nullspace(F, [list(H1.coords), list(H2.coords)], 4)
    return line_through(ProjPoint.of(F, basis[0]), ProjPoint.of(F, basis[1]))


def span_line_point(line: Line, P: ProjPoint) -> Plane:
    _same_field(line.field, P.field)
    if line.contains(P):
        raise DegenerateConfigurationError(f"{P} está sobre a reta")
    rows = [list(line.span[0].coords), list(line.span[1].coords), list(P.coords)]
    basis = nullspace(line.field, rows, 4)
    return Plane.of(line.field, basis[0])


def line_meet_plane(line: Line, H: Plane) -> Union[ProjPoint, str]:
    """Ponto de interseção, ou CONTAINED se a reta está no plano."""
    _same_field(line.field, H.field)
    F = line.field
    A, B = line.span
    a, b = H.evaluate(A), H.evaluate(B)
    if a == 0 and b == 0:
        return CONTAINED
    vec = [F.sub(F.mul(b, x), F.mul(a, y)) for x, y in zip(A.coords, B.coords)]
    return ProjPoint.of(F, vec)


def pencil_of_planes(line: Line, over: Optional[TowerMap] = None) -> List[Plane]:
    """
    Planos que contêm a reta, com parâmetros em P¹ do corpo indicado.

    Args:
        line: reta (precisa ser racional sobre o subcorpo, se `over` for dado)
        over: mergulho do subcorpo de parâmetros no corpo da reta

    Returns:
        |corpo|+1 planos em ordem canônica
    """
    F = line.field
    A, B = line.planes
    if over is None:
        params = list(range(F.order))
    else:
        if over.dst != F:
            raise FieldMismatchError("mergulho não termina no corpo da reta")
        params = [int(v) for v in over.table]
    members = {Plane.of(F, B.coords)}
    for s in params:
        vec = [F.add(a, F.mul(s, b)) for a, b in zip(A.coords, B.coords)]
        members.add(Plane.of(F, vec))
    return sorted(members, key=lambda h: h.sort_key)


def points_on_line(line: Line) -> List[ProjPoint]:
    F = line.field
    A, B = line.span
    pts = {B}
    for s in range(F.order):
        vec = [F.add(a, F.mul(s, b)) for a, b in zip(A.coords, B.coords)]
        pts.add(ProjPoint.of(F, vec))
    return sorted(pts, key=lambda x: x.sort_key)


# ---------------------------------------------------------------------------
# Enumeração
# ---------------------------------------------------------------------------


def _guard(F: FieldDesc, cap: int) -> None:
    if F.order > cap:
        raise EnumerationGuardError(f"enumeração sobre {F.name} excede o limite s ≤ {cap}")


def point_array(F: FieldDesc, dim: int) -> np.ndarray:
    """Todos os pontos normalizados de P^dim(F) como array (n, dim+1)."""
    blocks = []
    for lead in range(dim + 1):
        free = dim - lead
        n = F.order**free
        block = np.zeros((n, dim + 1), dtype=np.int64)
        block[:, lead] = 1
        idx = np.arange(n, dtype=np.int64)
        for col in range(dim, lead, -1):
            idx, digit = np.divmod(idx, F.order)
            block[:, col] = digit
        blocks.append(block)
    return np.concatenate(blocks, axis=0)


def enumerate_points(F: FieldDesc, dim: int, cap: int = DEFAULT_ENUMERATION_CAP) -> List[ProjPoint]:
    _guard(F, cap)
    pts = [ProjPoint(F, tuple(int(c) for c in row)) for row in point_array(F, dim)]
    return sorted(pts, key=lambda x: x.sort_key)


def enumerate_lines(F: FieldDesc, cap: int = DEFAULT_ENUMERATION_CAP) -> Iterator[Line]:
    """Gera todas as retas de P³(F) a partir das matrizes 2×4 em RREF."""
    _guard(F, cap)
    for i in range(4):
        for j in range(i + 1, 4):
            free1 = [c for c in range(i + 1, 4) if c != j]
            free2 = list(range(j + 1, 4))
            for vals1 in _tuples(F.order, len(free1)):
                row1 = [0] * 4
                row1[i] = 1
                for c, v in zip(free1, vals1):
                    row1[c] = v
                for vals2 in _tuples(F.order, len(free2)):
                    row2 = [0] * 4
                    row2[j] = 1
                    for c, v in zip(free2, vals2):
                        row2[c] = v
                    yield line_through(ProjPoint(F, tuple(row1)), ProjPoint(F, tuple(row2)))


def _tuples(s: int, n: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for head in range(s):
        for tail in _tuples(s, n - 1):
            yield (head,) + tail


def count_points(s: int, dim: int = 3) -> int:
    return sum(s**i for i in range(dim + 1))


def count_lines(s: int) -> int:
    return (s * s + 1) * (s * s + s + 1)


def sorted_lines(lines: Sequence[Line]) -> List[Line]:
    return sorted(lines, key=lambda ln: ln.sort_key)


# ---------------------------------------------------------------------------
# Racionalidade, mergulhos e ação de matrizes
# ---------------------------------------------------------------------------

ProjObject = Union[ProjPoint, Line, Plane]


def _coords_of(obj: ProjObject) -> Tuple[int, ...]:
    return obj.plucker if isinstance(obj, Line) else obj.coords


def is_rational_over(obj: ProjObject, sub: TowerMap) -> bool:
    """True se a forma canônica tem todas as coordenadas na imagem do subcorpo."""
    if obj.field != sub.dst:
        raise FieldMismatchError("objeto não está no corpo de chegada do mergulho")
    F = obj.field
    return all(F.in_subfield(c, sub.src.k) for c in _coords_of(obj))


def embed_point(P: ProjPoint, m: TowerMap) -> ProjPoint:
    _same_field(P.field, m.src)
    return ProjPoint(m.dst, tuple(m(c) for c in P.coords))


def embed_plane(H: Plane, m: TowerMap) -> Plane:
    _same_field(H.field, m.src)
    return Plane(m.dst, tuple(m(c) for c in H.coords))


def embed_line(line: Line, m: TowerMap) -> Line:
    _same_field(line.field, m.src)
    span = (embed_point(line.span[0], m), embed_point(line.span[1], m))
    return Line(m.dst, tuple(m(c) for c in line.plucker), span)


def _matvec(F: FieldDesc, mat: Sequence[int], vec: Sequence[int]) -> List[int]:
    n = len(vec)
    out = []
    for i in range(n):
        acc = 0
        for j in range(n):
            a = mat[i * n + j]
            if a and vec[j]:
                acc = F.add(acc, F.mul(a, vec[j]))
        out.append(acc)
    return out


def _vecmat(F: FieldDesc, vec: Sequence[int], mat: Sequence[int]) -> List[int]:
    n = len(vec)
    out = []
    for j in range(n):
        acc = 0
        for i in range(n):
            a = mat[i * n + j]
            if a and vec[i]:
                acc = F.add(acc, F.mul(vec[i], a))
        out.append(acc)
    return out


def apply(M, obj: ProjObject) -> ProjObject:
    """
    Aplica uma projetividade: pontos P ↦ M·P, planos h ↦ h·M⁻¹.

    `M` precisa expor `field`, `matrix` e `inverse` (tuplas 4×4 por linha).
    """
    _same_field(M.field, obj.field)
    F = obj.field
    if isinstance(obj, ProjPoint):
        return ProjPoint.of(F, _matvec(F, M.matrix, obj.coords))
    if isinstance(obj, Plane):
        return Plane.of(F, _vecmat(F, obj.coords, M.inverse))
    if isinstance(obj, Line):
        A, B = obj.span
        return line_through(apply(M, A), apply(M, B))  # type: ignore[arg-type]
    raise TypeError(f"objeto projetivo desconhecido: {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Versões vetorizadas (arrays de índices)
# ---------------------------------------------------------------------------


def vnormalize(F: FieldDesc, arr: np.ndarray) -> np.ndarray:
    """Divide cada linha pela primeira entrada não nula."""
    arr = np.asarray(arr, dtype=np.int64)
    nz = arr != 0
    first = np.argmax(nz, axis=1)
    lead = arr[np.arange(arr.shape[0]), first]
    if np.any(lead == 0):
        raise DegenerateConfigurationError("linha nula em normalização vetorizada")
    inv = F.vinv(lead)
    return np.stack([F.vmul(arr[:, c], inv) for c in range(arr.shape[1])], axis=1)


def vplucker_from_planes(F: FieldDesc, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    def w(i: int, j: int) -> np.ndarray:
        return F.vsub(F.vmul(a[:, i], b[:, j]), F.vmul(a[:, j], b[:, i]))

    return np.stack([w(2, 3), w(3, 1), w(1, 2), w(0, 3), w(2, 0), w(0, 1)], axis=1)


def vpairing(F: FieldDesc, lines: np.ndarray, plk: Sequence[int]) -> np.ndarray:
    """Emparelhamento de Plücker de cada linha do array com uma reta fixa."""
    acc = F.vscale(lines[:, 0], plk[5])
    acc = F.vsub(acc, F.vscale(lines[:, 1], plk[4]))
    acc = F.vadd(acc, F.vscale(lines[:, 2], plk[3]))
    acc = F.vadd(acc, F.vscale(lines[:, 3], plk[2]))
    acc = F.vsub(acc, F.vscale(lines[:, 4], plk[1]))
    return F.vadd(acc, F.vscale(lines[:, 5], plk[0]))


def vevaluate_plane(F: FieldDesc, pts: np.ndarray, h: Sequence[int]) -> np.ndarray:
    return F.vdot([pts[:, i] for i in range(pts.shape[1])], h)


def vsort_order(F: FieldDesc, arr: np.ndarray) -> np.ndarray:
    """Permutação que ordena as linhas pela ordem canônica."""
    rank = F.lex_rank
    keys = [rank[arr[:, c]] for c in range(arr.shape[1] - 1, -1, -1)]
    return np.lexsort(keys)


def vplucker_from_points(F: FieldDesc, P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    return np.stack(
        [F.vsub(F.vmul(P[:, i], Q[:, j]), F.vmul(P[:, j], Q[:, i])) for i, j in PLUCKER_PAIRS],
        axis=1,
    )


def vencode(F: FieldDesc, arr: np.ndarray) -> np.ndarray:
    """Codifica cada linha canônica como um inteiro (para busca com np.isin)."""
    acc = np.zeros(arr.shape[0], dtype=np.int64)
    for c in range(arr.shape[1]):
        acc = acc * F.order + arr[:, c]
    return acc
