"""
A curva GK em P³, sua seção hermitiana, o modelo plano X' e a projeção π_R.

Formas homogêneas em (X, Y, Z, W):

    F1 = X^q W + X W^q − Y^(q+1)
    F2 = Y (X^q + X W^(q−1))^(q−1) − Y W^(q²−q) − Z^(q²−q+1)

No afim W = 1 a curva é x^q + x = y^(q+1), z^(q²−q+1) = y^(q²) − y.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np
import structlog

from .errors import (
    CurveConsistencyError,
    DegenerateConfigurationError,
    SingularPointError,
    UnsupportedParameterError,
)
from .ff import DEFAULT_TABLE_LIMIT, FieldDesc, FieldTower
from .polyseries import MultiPoly
from .projgeom import (
    Line,
    Plane,
    ProjPoint,
    line_through,
    meet_plane_plane,
    point_array,
    vencode,
    vnormalize,
    vplucker_from_planes,
    vsort_order,
)

logger = structlog.get_logger(__name__)

SUPPORTED_Q = (2, 3, 4, 5)
SPACE_VARS = ("X", "Y", "Z", "W")
PLANE_VARS = ("X", "Z", "W")
SCAN_CHUNK = 1 << 16


@lru_cache(maxsize=None)
def gk_forms(q: int, F: FieldDesc) -> Tuple[MultiPoly, MultiPoly]:
    X, Y, Z, W = MultiPoly.gens(F, SPACE_VARS)
    F1 = X**q * W + X * W**q - Y ** (q + 1)
    inner = X**q + X * W ** (q - 1)
    F2 = Y * inner ** (q - 1) - Y * W ** (q * q - q) - Z ** (q * q - q + 1)
    return F1, F2


@lru_cache(maxsize=None)
def plane_form(q: int, F: FieldDesc) -> MultiPoly:
    X, Z, W = MultiPoly.gens(F, PLANE_VARS)
    n = q * q - q + 1
    q3 = q**3
    return X**q3 * W + X * W**q3 - (X**q + X * W ** (q - 1)) ** n * W**n - Z ** (q3 + 1)


def genus(q: int) -> int:
    return (q**3 + 1) * (q * q - 2) // 2 + 1


def hasse_weil_count(q: int, m: int) -> int:
    """#X(F_{q^(6m)}) para a curva maximal sobre F_{q⁶}."""
    return q ** (6 * m) + 1 - 2 * genus(q) * (-(q**3)) ** m


@dataclass
class PointCloud:
    """Pontos racionais da curva sobre um corpo, como array (n, 4) canônico."""

    field: FieldDesc
    coords: np.ndarray
    forms: Tuple[MultiPoly, MultiPoly] = field(repr=False)

    def __len__(self) -> int:
        return int(self.coords.shape[0])

    @cached_property
    def points(self) -> List[ProjPoint]:
        F = self.field
        return [ProjPoint(F, tuple(int(c) for c in row)) for row in self.coords]

    @cached_property
    def index(self) -> Dict[Tuple[int, ...], int]:
        return {tuple(int(c) for c in row): i for i, row in enumerate(self.coords)}

    def __contains__(self, P: ProjPoint) -> bool:
        return P.field == self.field and P.coords in self.index

    @cached_property
    def gradients(self) -> Tuple[np.ndarray, np.ndarray]:
        cols = [self.coords[:, i] for i in range(4)]
        out = []
        for f in self.forms:
            out.append(np.stack([d.veval(cols) for d in f.gradient()], axis=1))
        return out[0], out[1]

    @cached_property
    def tangents(self) -> np.ndarray:
        """Plücker normalizado da reta tangente em cada ponto."""
        a, b = self.gradients
        plk = vplucker_from_planes(self.field, a, b)
        if np.any(np.all(plk == 0, axis=1)):
            bad = int(np.argmax(np.all(plk == 0, axis=1)))
            raise SingularPointError(f"posto do jacobiano < 2 em {self.points[bad]}")
        return vnormalize(self.field, plk)

    @cached_property
    def codes(self) -> np.ndarray:
        """Códigos inteiros ordenados dos pontos (para busca com np.isin)."""
        return np.sort(vencode(self.field, self.coords))

    def hermitian_mask(self) -> np.ndarray:
        return self.coords[:, 2] == 0


class GKCurve:
    """
    Curva GK para um q fixo, com os objetos nomeados sobre K = F_{q⁶}.

    Os conjuntos de pontos são calculados sob demanda e mantidos em cache;
    depois de prontos são somente leitura.
    """

    def __init__(self, q: int, tower: FieldTower):
        if q not in SUPPORTED_Q:
            raise UnsupportedParameterError(f"q={q} fora de {SUPPORTED_Q}")
        self.q = q
        self.tower = tower
        self.work = tower.work
        self.F1, self.F2 = gk_forms(q, self.work)
        self._clouds: Dict[FieldDesc, PointCloud] = {}

        K = self.work
        self.P_inf = ProjPoint(K, (1, 0, 0, 0))
        self.R = ProjPoint(K, (0, 1, 0, 0))
        self.R_prime = ProjPoint(K, (0, 0, 1, 0))
        self.line_inf = line_through(self.P_inf, self.R)
        self.line_0 = line_through(self.R_prime, self.R)

    @property
    def degree(self) -> int:
        return self.q**3 + 1

    @property
    def genus(self) -> int:
        return genus(self.q)

    def forms(self, F: FieldDesc) -> Tuple[MultiPoly, MultiPoly]:
        return gk_forms(self.q, F)

    # -- pontos -------------------------------------------------------------

    def points(self, F: FieldDesc) -> PointCloud:
        if F not in self._clouds:
            self._clouds[F] = self._enumerate(F)
            logger.info("pontos da curva enumerados", corpo=F.name, total=len(self._clouds[F]))
        return self._clouds[F]

    def _enumerate(self, F: FieldDesc) -> PointCloud:
        q = self.q
        xs = np.arange(F.order, dtype=np.int64)
        trace = F.vadd(F.vpow(xs, q), xs)
        order = np.argsort(trace, kind="stable")
        sorted_trace = trace[order]

        ys = xs
        c = F.vpow(ys, q + 1)
        starts = np.searchsorted(sorted_trace, c, side="left")
        counts_x = np.searchsorted(sorted_trace, c, side="right") - starts

        n = q * q - q + 1
        rhs = F.vsub(F.vpow(ys, q * q), ys)
        g = math.gcd(n, F.m)
        step = F.m // g
        inv = pow(n // g, -1, step) if step > 1 else 0

        zero_y = ys[rhs == 0]
        ylist = [zero_y]
        zlist = [np.zeros_like(zero_y)]
        nz = ys[rhs != 0]
        L = F.log[rhs[rhs != 0]]
        ok = L % g == 0
        if np.any(ok):
            base = ((L[ok] // g) * inv) % step if step > 1 else np.zeros(int(ok.sum()), np.int64)
            t = base[:, None] + step * np.arange(g, dtype=np.int64)[None, :]
            ylist.append(np.repeat(nz[ok], g))
            zlist.append(F.exp[t].reshape(-1))
        yy = np.concatenate(ylist)
        zz = np.concatenate(zlist)

        rep = counts_x[yy]
        total = int(rep.sum())
        Y = np.repeat(yy, rep)
        Z = np.repeat(zz, rep)
        offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(rep) - rep, rep)
        Xc = order[np.repeat(starts[yy], rep) + offsets]
        affine = np.stack([Xc, Y, Z, np.ones(total, dtype=np.int64)], axis=1)
        coords = np.concatenate([affine, np.array([[1, 0, 0, 0]], dtype=np.int64)])
        coords = vnormalize(F, coords)
        coords = coords[vsort_order(F, coords)]
        return PointCloud(F, coords, self.forms(F))

    def point_list(self, F: FieldDesc) -> List[ProjPoint]:
        return self.points(F).points

    def hermitian_section(self, F: Optional[FieldDesc] = None) -> List[ProjPoint]:
        """X ∩ {Z=0} sobre F (por padrão F_{q²})."""
        cloud = self.points(F or self.tower.quad)
        mask = cloud.hermitian_mask()
        return [cloud.points[i] for i in np.nonzero(mask)[0]]

    def contains(self, P: ProjPoint) -> bool:
        f1, f2 = self.forms(P.field)
        return f1.eval_index(P.coords) == 0 and f2.eval_index(P.coords) == 0

    # -- geometria local ----------------------------------------------------

    def gradient_planes(self, P: ProjPoint) -> Tuple[List[int], List[int]]:
        f1, f2 = self.forms(P.field)
        return (
            [d.eval_index(P.coords) for d in f1.gradient()],
            [d.eval_index(P.coords) for d in f2.gradient()],
        )

    def tangent_line(self, P: ProjPoint) -> Line:
        if not self.contains(P):
            raise DegenerateConfigurationError(f"{P} não está na curva")
        a, b = self.gradient_planes(P)
        try:
            return meet_plane_plane(Plane.of(P.field, a), Plane.of(P.field, b))
        except DegenerateConfigurationError as exc:
            raise SingularPointError(f"posto do jacobiano < 2 em {P}") from exc

    # -- verificação --------------------------------------------------------

    def verify(self) -> None:
        """Confere as invariantes da curva sobre F_{q⁶}."""
        cloud = self.points(self.work)
        cols = [cloud.coords[:, i] for i in range(4)]
        for name, f in zip(("F1", "F2"), (self.F1, self.F2)):
            if np.any(f.veval(cols) != 0):
                raise CurveConsistencyError(f"{name} não se anula num ponto enumerado")
        _ = cloud.tangents
        if self.F1.degree != self.q + 1 or self.F2.degree != self.q**2 - self.q + 1:
            raise CurveConsistencyError("graus das formas inesperados")
        section = self.section_at_infinity()
        if section != [self.P_inf]:
            raise CurveConsistencyError(f"X ∩ {{W=0}} = {section}, esperado {{P∞}}")

    def section_at_infinity(self) -> List[ProjPoint]:
        """Varre o plano W=0 sobre F_{q⁶}."""
        K = self.work
        found = []
        plane = point_array(K, 2)
        for start in range(0, plane.shape[0], SCAN_CHUNK):
            chunk = plane[start : start + SCAN_CHUNK]
            cols = [chunk[:, 0], chunk[:, 1], chunk[:, 2], np.zeros(chunk.shape[0], np.int64)]
            hit = (self.F1.veval(cols) == 0) & (self.F2.veval(cols) == 0)
            for row in chunk[hit]:
                found.append(ProjPoint(K, (int(row[0]), int(row[1]), int(row[2]), 0)))
        return sorted(found, key=lambda P: P.sort_key)


def build_curve(
    q: int,
    tower: Optional[FieldTower] = None,
    m_max: int = 3,
    table_limit: int = DEFAULT_TABLE_LIMIT,
    verify: bool = True,
) -> GKCurve:
    if q not in SUPPORTED_Q:
        raise UnsupportedParameterError(f"q={q} fora de {SUPPORTED_Q}")
    tower = tower or FieldTower(q, m_max=m_max, table_limit=table_limit)
    curve = GKCurve(q, tower)
    if verify:
        curve.verify()
    return curve


def genus_check(curve: GKCurve) -> int:
    """Gênero pela identidade de Riemann–Hurwitz, conferido pela contagem maximal."""
    q = curve.q
    g = genus(q)
    if 2 * g - 2 + 2 * (q**3 + 1) != (q**3 + 1) * q * q:
        raise CurveConsistencyError("identidade do gênero falhou")
    count = len(curve.points(curve.work))
    expected = q**6 + 1 + 2 * g * q**3
    if count != expected:
        raise CurveConsistencyError(f"#X(F_q⁶) = {count}, esperado {expected}")
    return g


# ---------------------------------------------------------------------------
# Modelo plano X' = π_R(X)
# ---------------------------------------------------------------------------


def project_from_R(P: ProjPoint) -> ProjPoint:
    """π_R: (X:Y:Z:W) ↦ (X:Z:W)."""
    if len(P.coords) != 4:
        raise ValueError("π_R recebe pontos de P³")
    x, y, z, w = P.coords
    if x == 0 and z == 0 and w == 0:
        raise DegenerateConfigurationError("π_R não está definida em R")
    return ProjPoint.of(P.field, (x, z, w))


def line_through_R(P: ProjPoint) -> Line:
    """Reta de P³ por R correspondente ao ponto (a:b:c) de P²."""
    a, b, c = P.coords
    F = P.field
    return line_through(ProjPoint(F, (0, 1, 0, 0)), ProjPoint.of(F, (a, 0, b, c)))


def project_line_from_R(line: Line) -> ProjPoint:
    F = line.field
    R = ProjPoint(F, (0, 1, 0, 0))
    if not line.contains(R):
        raise DegenerateConfigurationError("a reta não passa por R")
    other = next(P for P in line.span if P != R)
    return project_from_R(other)


class PlaneModel:
    """X' ⊂ P² de grau q³+1."""

    def __init__(self, curve: GKCurve):
        self.q = curve.q
        self.curve = curve
        self.form = plane_form(self.q, curve.work)
        self._singular: Dict[FieldDesc, List[ProjPoint]] = {}

    def form_over(self, F: FieldDesc) -> MultiPoly:
        return plane_form(self.q, F)

    def contains(self, P: ProjPoint) -> bool:
        return self.form_over(P.field).eval_index(P.coords) == 0

    def is_singular(self, P: ProjPoint) -> bool:
        f = self.form_over(P.field)
        return f.eval_index(P.coords) == 0 and all(
            d.eval_index(P.coords) == 0 for d in f.gradient()
        )

    def singular_points(self, F: Optional[FieldDesc] = None) -> List[ProjPoint]:
        F = F or self.curve.work
        if F not in self._singular:
            self._singular[F] = self._scan_singular(F)
            logger.info("pontos singulares de X'", corpo=F.name, total=len(self._singular[F]))
        return self._singular[F]

    def _scan_singular(self, F: FieldDesc) -> List[ProjPoint]:
        f = self.form_over(F)
        partials = f.gradient()
        grid = point_array(F, 2)
        found = []
        for start in range(0, grid.shape[0], SCAN_CHUNK):
            chunk = grid[start : start + SCAN_CHUNK]
            cols = [chunk[:, i] for i in range(3)]
            mask = f.veval(cols) == 0
            for d in partials:
                if not np.any(mask):
                    break
                sub = [c[mask] for c in cols]
                vals = d.veval(sub)
                idx = np.nonzero(mask)[0]
                mask[idx[vals != 0]] = False
            for row in chunk[mask]:
                found.append(ProjPoint(F, tuple(int(c) for c in row)))
        return sorted(found, key=lambda P: P.sort_key)


def build_plane_model(curve: GKCurve) -> PlaneModel:
    return PlaneModel(curve)


def birationality_witness(curve: GKCurve, model: PlaneModel) -> dict:
    """
    Confere que π_R é injetiva em X(F_{q⁶}) fora das fibras sobre Sing(X').

    Returns:
        Resumo com número de imagens, fibras múltiplas e suas imagens
    """
    K = curve.work
    cloud = curve.points(K)
    images = vnormalize(K, cloud.coords[:, [0, 2, 3]])
    keys = [tuple(int(c) for c in row) for row in images]
    sizes = Counter(keys)
    multi = sorted((k for k, n in sizes.items() if n > 1), key=lambda k: tuple(K.lex_key(c) for c in k))
    singular = {P.coords for P in model.singular_points(K)}

    form_vals = model.form.veval([images[:, i] for i in range(3)])
    if np.any(form_vals != 0):
        raise CurveConsistencyError("π_R(X) não está contido em V(F')")
    for k in multi:
        if k not in singular:
            raise CurveConsistencyError(f"fibra múltipla sobre ponto liso {k}")
        if k[1] != 0:
            raise CurveConsistencyError(f"fibra múltipla fora de {{Z=0}} sobre {k}")
    return {
        "points": len(cloud),
        "images": len(sizes),
        "multi_fibers": [
            {"image": [K.text(c) for c in k], "size": sizes[k]} for k in multi
        ],
        "injective_off_singular": True,
    }


def hermitian_line_statistics(curve: GKCurve, sample: int = 0, seed: int = 0) -> dict:
    """
    Tamanhos das interseções de retas de {Z=0} com a seção hermitiana.

    Retas sobre F_{q²} são varridas por completo; `sample` retas de {Z=0}
    sobre F_{q⁶} não racionais sobre F_{q²} são sorteadas com `seed`.
    """
    tower = curve.tower
    quad, K = tower.quad, tower.work
    herm = np.array([[P.coords[0], P.coords[1], P.coords[3]] for P in curve.hermitian_section(quad)])

    def histogram(F: FieldDesc, pts: np.ndarray, duals: np.ndarray) -> Dict[int, int]:
        hist: Counter = Counter()
        cols = [pts[:, i] for i in range(3)]
        for row in duals:
            vals = F.vdot(cols, [int(c) for c in row])
            hist[int(np.count_nonzero(vals == 0))] += 1
        return dict(sorted(hist.items()))

    exhaustive = histogram(quad, herm, point_array(quad, 2))
    result = {"quad": exhaustive, "sample": {}}
    if sample:
        to_k = tower.map(quad, K)
        herm_k = to_k.embed_array(herm)
        rng = np.random.default_rng(seed)
        duals = []
        while len(duals) < sample:
            cand = rng.integers(0, K.order, size=3)
            if not cand.any():
                continue
            row = vnormalize(K, cand[None, :])[0]
            if all(K.in_subfield(int(c), quad.k) for c in row):
                continue
            duals.append(row)
        result["sample"] = histogram(K, herm_k, np.array(duals))
    logger.info("estatística de retas hermitianas", q=curve.q, **{"f_q2": exhaustive})
    return result
