"""
Multiplicidades locais na curva GK.

Expansões de ramo por Newton em séries truncadas, ord_P(H), multiplicidade
de base de uma reta, grau e perfil de ramificação da projeção a partir de
uma reta.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog

from .errors import CurveConsistencyError, DegenerateConfigurationError, SingularPointError
from .ff import FieldDesc, poly_gcd, poly_mul, poly_trim, univariate_roots
from .gkcurve import SPACE_VARS, GKCurve, PointCloud
from .polyseries import MultiPoly, TruncSeries, resultant_elim
from .projgeom import (
    Line,
    Plane,
    ProjPoint,
    embed_line,
    is_rational_over,
    nullspace,
    point_array,
    pencil_of_planes,
    vevaluate_plane,
    vpairing,
)

logger = structlog.get_logger(__name__)

OrdValue = Union[int, str]


def default_precision(q: int) -> int:
    return q**3 + 2


# ---------------------------------------------------------------------------
# Expansões de ramo
# ---------------------------------------------------------------------------


@dataclass
class BranchExpansion:
    """Parametrização local de X em P, no afim onde a coordenada `chart` vale 1."""

    point: ProjPoint
    chart: int
    parameter: int
    dependents: Tuple[int, int]
    series: Dict[int, TruncSeries]
    precision: int

    def coordinate_series(self) -> List[TruncSeries]:
        F = self.point.field
        return [
            TruncSeries.constant(F, 1, self.precision) if i == self.chart else self.series[i]
            for i in range(4)
        ]

    def compose_linear(self, h: Sequence[int]) -> TruncSeries:
        """Forma linear h avaliada ao longo do ramo."""
        F = self.point.field
        acc = TruncSeries.zero(F, self.precision)
        for c, s in zip(h, self.coordinate_series()):
            if c:
                acc = acc + s.scale(c)
        return acc


def _affine_setup(curve: GKCurve, P: ProjPoint):
    chart = next(i for i, c in enumerate(P.coords) if c)
    var = SPACE_VARS[chart]
    forms = [f.dehomogenize(var) for f in curve.forms(P.field)]
    coords = [i for i in range(4) if i != chart]
    grads = [f.gradient() for f in forms]
    return chart, coords, forms, grads


def _choose_parameter(F: FieldDesc, jac: List[List[int]]) -> int:
    for k in range(3):
        cols = [j for j in range(3) if j != k]
        det = F.sub(
            F.mul(jac[0][cols[0]], jac[1][cols[1]]), F.mul(jac[0][cols[1]], jac[1][cols[0]])
        )
        if det:
            return k
    raise SingularPointError("nenhum parâmetro local admissível")


def _newton(
    F: FieldDesc,
    forms: Sequence[MultiPoly],
    grads: Sequence[Sequence[MultiPoly]],
    xs: List[TruncSeries],
    dep: Tuple[int, int],
) -> List[TruncSeries]:
    N = xs[0].precision
    for _ in range(2 * N.bit_length() + 4):
        G = [f.eval_series(xs) for f in forms]
        if all(g.valuation() is None for g in G):
            return xs
        J = [[grads[i][j].eval_series(xs) for j in dep] for i in range(2)]
        det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
        try:
            inv = det.reciprocal()
        except ZeroDivisionError as exc:
            raise SingularPointError("jacobiano degenerado na iteração de Newton") from exc
        d0 = inv * (J[1][1] * G[0] - J[0][1] * G[1])
        d1 = inv * (J[0][0] * G[1] - J[1][0] * G[0])
        xs = list(xs)
        xs[dep[0]] = xs[dep[0]] - d0
        xs[dep[1]] = xs[dep[1]] - d1
    raise CurveConsistencyError("iteração de Newton não convergiu")


def branch_expand(curve: GKCurve, P: ProjPoint, N: int, start: Optional[BranchExpansion] = None) -> BranchExpansion:
    """
    Expansão de ramo em P com N coeficientes.

    Args:
        curve: curva GK
        P: ponto liso da curva
        N: precisão (termos t⁰..t^(N−1))
        start: expansão anterior, usada como ponto de partida

    Returns:
        BranchExpansion cujas séries anulam as duas equações módulo t^N
    """
    if N < 2:
        raise ValueError("precisão mínima é 2")
    F = P.field
    chart, coords, forms, grads = _affine_setup(curve, P)
    a = [P.coords[i] for i in coords]
    jac = [[d.eval_index(a) for d in g] for g in grads]
    k = _choose_parameter(F, jac)
    dep = tuple(j for j in range(3) if j != k)

    xs: List[TruncSeries] = []
    for j in range(3):
        if start is not None:
            xs.append(start.series[coords[j]].truncate(N))
        elif j == k:
            xs.append(TruncSeries.from_list(F, [a[j], 1], N))
        else:
            xs.append(TruncSeries.constant(F, a[j], N))
    xs = _newton(F, forms, grads, xs, dep)  # type: ignore[arg-type]
    return BranchExpansion(
        point=P,
        chart=chart,
        parameter=coords[k],
        dependents=(coords[dep[0]], coords[dep[1]]),
        series={coords[j]: xs[j] for j in range(3)},
        precision=N,
    )


BRANCH_CACHE_SIZE = 4096
_BRANCHES: "OrderedDict[Tuple[Tuple[MultiPoly, MultiPoly], ProjPoint], BranchExpansion]" = OrderedDict()


def branch_at(curve: GKCurve, P: ProjPoint, N: Optional[int] = None) -> BranchExpansion:
    """Expansão em cache LRU por ponto, estendida quando a precisão pedida é maior."""
    N = N or default_precision(curve.q)
    key = (curve.forms(P.field), P)
    cached = _BRANCHES.get(key)
    if cached is not None:
        _BRANCHES.move_to_end(key)
        if cached.precision >= N:
            return cached
    br = branch_expand(curve, P, N, start=cached)
    _BRANCHES[key] = br
    _BRANCHES.move_to_end(key)
    while len(_BRANCHES) > BRANCH_CACHE_SIZE:
        _BRANCHES.popitem(last=False)
    return br


def ord_hyperplane(curve: GKCurve, P: ProjPoint, H: Plane, N: Optional[int] = None) -> OrdValue:
    """ord_P(H); devolve "≥M" se a série se anula até a precisão dobrada."""
    if H.field != P.field:
        raise DegenerateConfigurationError("plano e ponto em corpos diferentes")
    if H.evaluate(P) != 0:
        raise DegenerateConfigurationError(f"{P} não está no plano {H}")
    N = N or default_precision(curve.q)
    v = branch_at(curve, P, N).compose_linear(H.coords).valuation()
    if v is not None:
        return v
    v = branch_at(curve, P, 2 * N).compose_linear(H.coords).valuation()
    if v is not None:
        return v
    logger.warning("ord acima da precisão", ponto=str(P), plano=str(H), precisao=2 * N)
    return f"≥{2 * N}"


def _embed_line_to(curve: GKCurve, line: Line, L: FieldDesc) -> Line:
    if line.field == L:
        return line
    return embed_line(line, curve.tower.map(line.field, L))


def base_multiplicity(curve: GKCurve, line: Line, P: ProjPoint) -> int:
    """
    m_P(ℓ): mínimo de ord_P sobre o feixe de planos que contêm ℓ.

    O mínimo é atingido em um dos dois planos da base do feixe, pois
    ord_P(aL1 + bL2) ≥ min(ord_P L1, ord_P L2).
    """
    line = _embed_line_to(curve, line, P.field)
    if not line.contains(P):
        return 0
    values = [ord_hyperplane(curve, P, H) for H in line.planes]
    exact = [v for v in values if isinstance(v, int)]
    if not exact:
        raise CurveConsistencyError(f"ord indefinido nos dois planos da base em {P}")
    return min(exact)


# ---------------------------------------------------------------------------
# Grau da projeção
# ---------------------------------------------------------------------------


@dataclass
class DegreeReport:
    line: Line
    degree: Optional[int]
    lower: int
    upper: int
    complete: bool
    in_cone: bool
    contacts: List[Tuple[ProjPoint, int]] = field(default_factory=list)
    cross_checked: int = 0

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "lower": self.lower,
            "upper": self.upper,
            "complete": self.complete,
            "contacts": [{"point": P.to_json(), "base": m} for P, m in self.contacts],
        }


def binary_roots(g: MultiPoly, A: ProjPoint, B: ProjPoint) -> List[Tuple[ProjPoint, int]]:
    """Raízes de uma forma binária g(s, t) como pontos s·A + t·B, com multiplicidade."""
    F = g.field
    deg = g.degree
    u = g.dehomogenize("s").univariate()
    out = []
    if len(u) - 1 < deg:
        out.append((B, deg - (len(u) - 1)))
    if len(u) > 1:
        for r, mult in univariate_roots(u, F):
            vec = [F.add(x, F.mul(r.value, y)) for x, y in zip(A.coords, B.coords)]
            out.append((ProjPoint.of(F, vec), mult))
    return out


def _line_forms(curve: GKCurve, line: Line) -> Tuple[MultiPoly, MultiPoly]:
    f1, f2 = curve.forms(line.field)
    basis = [line.span[0].coords, line.span[1].coords]
    return (
        f1.restrict_to_span(basis, ("s", "t")),
        f2.restrict_to_span(basis, ("s", "t")),
    )


def line_contacts(curve: GKCurve, line: Line, m_max: Optional[int] = None):
    """
    Pontos de ℓ ∩ X encontrados na torre, com as multiplicidades de raiz.

    Returns:
        (pontos na curva com multiplicidade de raiz, multiplicidade encontrada,
        multiplicidade esperada, reta contida no cone V(F1))
    """
    K = curve.work
    line = _embed_line_to(curve, line, K)
    m_max = min(m_max or curve.tower.m_max, curve.tower.m_max)
    f1, f2 = _line_forms(curve, line)
    in_cone = f1.is_zero()
    expected = f2.degree if in_cone else f1.degree
    found: List[Tuple[ProjPoint, int]] = []
    total = 0
    for m in range(1, m_max + 1):
        L = curve.tower.field_for(m)
        if m == 1:
            lineL = line
        else:
            lineL = _embed_line_to(curve, line, L)
        gK = f2 if in_cone else f1
        gL = gK if m == 1 else gK.map_coefficients(curve.tower.map(K, L))
        roots = binary_roots(gL, *lineL.span)
        if m > 1:
            to_L = curve.tower.map(K, L)
            roots = [(P, k) for P, k in roots if not is_rational_over(P, to_L)]
        for P, k in roots:
            total += k
            if in_cone or curve.contains(P):
                found.append((P, k))
        if total >= expected:
            break
    return found, total, expected, in_cone


def projection_degree(
    curve: GKCurve,
    line: Line,
    m_max: Optional[int] = None,
    cross_check: bool = False,
    seed: int = 0,
) -> DegreeReport:
    """
    Grau de π_ℓ: (q³+1) − Σ m_P sobre ℓ ∩ X.

    Quando as raízes de F1|ℓ não aparecem todas na torre, devolve limites:
    cada ponto ausente contribui no máximo com sua multiplicidade de raiz.
    """
    q = curve.q
    K = curve.work
    line = _embed_line_to(curve, line, K)
    contacts, total, expected, in_cone = line_contacts(curve, line, m_max)
    with_base = [(P, base_multiplicity(curve, line, P)) for P, _ in contacts]
    with_base = [(P, m) for P, m in with_base if m > 0]
    known = sum(m for _, m in with_base)
    missing = max(expected - total, 0)
    upper = q**3 + 1 - known
    lower = upper - missing
    complete = missing == 0
    report = DegreeReport(
        line=line,
        degree=upper if complete else None,
        lower=lower,
        upper=upper,
        complete=complete,
        in_cone=in_cone,
        contacts=with_base,
    )
    if in_cone and complete and known != expected:
        raise CurveConsistencyError(
            f"reta no cone com Σm_P = {known}, esperado {expected}: {line}"
        )
    if cross_check:
        report.cross_checked = _cross_check(curve, report, seed)
    return report


def _cross_check(curve: GKCurve, report: DegreeReport, seed: int, wanted: int = 3, attempts: int = 24) -> int:
    """Soma Σe em fibras completas e compara com o grau; devolve quantas conferiu."""
    line = report.line
    members = pencil_of_planes(line)
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(members))[:attempts]
    base = dict(report.contacts)
    checked = 0
    for idx in order:
        H = members[int(idx)]
        pts = fiber_points(curve, H, curve.work)
        total_ord = 0
        contribution = 0
        for P in pts:
            v = ord_hyperplane(curve, P, H)
            if not isinstance(v, int):
                break
            total_ord += v
            contribution += v - base.get(P, 0) if line.contains(P) else v
        else:
            if total_ord > curve.degree:
                raise CurveConsistencyError(f"Σ ord = {total_ord} > grau da curva em {H}")
            if total_ord < curve.degree:
                continue
            if not report.lower <= contribution <= report.upper:
                raise CurveConsistencyError(
                    f"fibra {H} soma {contribution}, grau em [{report.lower}, {report.upper}]"
                )
            checked += 1
            if checked >= wanted:
                break
    if checked < wanted:
        logger.warning("poucas fibras completas na verificação cruzada", reta=str(line), conferidas=checked)
    return checked


# ---------------------------------------------------------------------------
# Fibras
# ---------------------------------------------------------------------------


def _affine_solutions(fa: MultiPoly, ga: MultiPoly, F: FieldDesc) -> List[Tuple[int, int]]:
    """Zeros comuns (u, v) ∈ F² de dois polinômios em (u, v)."""
    if fa.is_zero() or ga.is_zero():
        raise DegenerateConfigurationError("plano contido numa das superfícies")
    du, dg = fa.degree_in("u"), ga.degree_in("u")
    if du >= 1 and dg >= 1:
        r = resultant_elim(fa, ga, "u").univariate()
        if not r:
            raise DegenerateConfigurationError("resultante identicamente nula")
    else:
        r = (fa if du < 1 else ga).substitute("u", 0).univariate()
    if len(r) <= 1:
        return []
    sols = []
    for v0, _ in univariate_roots(r, F):
        fu = fa.substitute("v", v0.value).univariate()
        gu = ga.substitute("v", v0.value).univariate()
        if not fu and not gu:
            raise DegenerateConfigurationError("reta inteira contida na interseção")
        h = gu if not fu else fu if not gu else poly_gcd(F, fu, gu)
        if len(poly_trim(h)) <= 1:
            continue
        for u0, _ in univariate_roots(h, F):
            sols.append((u0.value, v0.value))
    return sols


def fiber_points(curve: GKCurve, H: Plane, F: Optional[FieldDesc] = None) -> List[ProjPoint]:
    """
    X ∩ H sobre F por eliminação: resultante em u, raízes em v, substituição.

    Todo candidato é reconferido nas equações da curva.
    """
    F = F or H.field
    if H.field != F:
        H = Plane(F, tuple(curve.tower.map(H.field, F)(c) for c in H.coords))
    basis = nullspace(F, [list(H.coords)], 4)
    f1, f2 = curve.forms(F)
    names = ("u", "v", "w")
    g1 = f1.restrict_to_span(basis, names)
    g2 = f2.restrict_to_span(basis, names)

    candidates = [(u, v, 1) for u, v in _affine_solutions(g1.dehomogenize("w"), g2.dehomogenize("w"), F)]
    h1, h2 = g1.substitute("w", 0), g2.substitute("w", 0)
    if h1.eval_index([1, 0]) == 0 and h2.eval_index([1, 0]) == 0:
        candidates.append((1, 0, 0))
    a1 = h1.substitute("v", 1).univariate()
    a2 = h2.substitute("v", 1).univariate()
    if not a1 and not a2:
        raise DegenerateConfigurationError("reta no infinito do plano contida na curva")
    h = a2 if not a1 else a1 if not a2 else poly_gcd(F, a1, a2)
    if len(poly_trim(h)) > 1:
        for u0, _ in univariate_roots(h, F):
            candidates.append((u0.value, 1, 0))

    points = set()
    for u, v, w in candidates:
        vec = [0, 0, 0, 0]
        for coeff, b in zip((u, v, w), basis):
            if coeff:
                vec = [F.add(x, F.mul(coeff, y)) for x, y in zip(vec, b)]
        P = ProjPoint.of(F, vec)
        if curve.contains(P):
            points.add(P)
    return sorted(points, key=lambda P: P.sort_key)


def plane_section(curve: GKCurve, H: Plane) -> List[ProjPoint]:
    """X(F) ∩ H lido da nuvem de pontos do corpo de H."""
    cloud = curve.points(H.field)
    vals = vevaluate_plane(H.field, cloud.coords, H.coords)
    return [cloud.points[i] for i in np.nonzero(vals == 0)[0]]


@dataclass
class BezoutSum:
    """
    Σ ord_P(H) sobre X ∩ H.

    Pontos da torre entram com ord_P(H) do ramo; a multiplicidade dos pontos
    fora da torre vem das raízes da resultante (`outside`).
    """

    plane: Plane
    degree: int
    values: Dict[ProjPoint, OrdValue] = field(default_factory=dict)
    outside: int = 0
    notice: Optional[str] = None

    @property
    def total(self) -> int:
        return sum(v for v in self.values.values() if isinstance(v, int)) + self.outside

    @property
    def holds(self) -> bool:
        return self.notice is None and self.total == self.degree

    def to_json(self) -> dict:
        return {
            "plane": self.plane.to_json(),
            "total": self.total,
            "outside": self.outside,
            "points": len(self.values),
            "notice": self.notice,
        }


def _section_chart(curve: GKCurve, H: Plane) -> Tuple[List[List[int]], MultiPoly, MultiPoly]:
    """
    Base (c0, c1, c2) de H cuja reta w=0 não encontra X ∩ H.

    Sem pontos no infinito, Res_u tem grau q³+1 e a multiplicidade de cada
    raiz v0 é a soma das multiplicidades de interseção sobre v0.
    """
    K = H.field
    basis = nullspace(K, [list(H.coords)], 4)
    f1, f2 = curve.forms(K)
    names = ("u", "v", "w")
    for a, b in product(range(K.order), repeat=2):
        kernel = nullspace(K, [[a, b, 1]], 3)
        frame = []
        for c in kernel + [[0, 0, 1]]:
            vec = [0, 0, 0, 0]
            for coeff, row in zip(c, basis):
                if coeff:
                    vec = [K.add(x, K.mul(coeff, y)) for x, y in zip(vec, row)]
            frame.append(vec)
        g1 = f1.restrict_to_span(frame, names)
        g2 = f2.restrict_to_span(frame, names)
        if g1.is_zero() or g2.is_zero():
            raise DegenerateConfigurationError(f"plano {H} contido numa das superfícies")
        h1, h2 = g1.substitute("w", 0), g2.substitute("w", 0)
        if h1.eval_index([1, 0]) == 0 and h2.eval_index([1, 0]) == 0:
            continue
        a1 = h1.substitute("v", 1).univariate()
        a2 = h2.substitute("v", 1).univariate()
        if not a1 or not a2 or len(poly_gcd(K, a1, a2)) > 1:
            continue
        return frame, g1.dehomogenize("w"), g2.dehomogenize("w")
    raise DegenerateConfigurationError(f"nenhuma carta afim sem pontos no infinito para {H}")


def _eliminant(F: FieldDesc, fa: MultiPoly, ga: MultiPoly) -> List[int]:
    """Res_u(fa, ga) como polinômio em v."""
    du, dg = fa.degree_in("u"), ga.degree_in("u")
    if du >= 1 and dg >= 1:
        return resultant_elim(fa, ga, "u").univariate()
    const, other = (fa, dg) if du < 1 else (ga, du)
    base = const.substitute("u", 0).univariate()
    out = [1]
    for _ in range(other):
        out = poly_mul(F, out, base)
    return poly_trim(out)


def _exact_degree(curve: GKCurve, L: FieldDesc, m: int, a: int) -> bool:
    """True se a ∈ L = F_{q^(6m)} tem grau exatamente m sobre F_{q⁶}."""
    k = curve.work.k
    return all(not L.in_subfield(a, k * d) for d in range(1, m) if m % d == 0)


def _fiber_roots(curve: GKCurve, h: List[int], L: FieldDesc, m: int, m_max: int):
    """
    Raízes u0 de h (coeficientes em L = corpo de v0) nos corpos da torre.

    Devolve [(corpo, u0, multiplicidade)] e se h se decompõe por completo.
    """
    K = curve.work
    deg = len(h) - 1
    if deg == 1:
        return [(L, L.mul(L.neg(h[0]), L.inv(h[1])), 1)], True
    fields = range(1, m_max + 1) if m == 1 else [m]
    found = []
    count = 0
    for b in fields:
        Lb = curve.tower.field_for(b)
        hb = h if Lb == L else [curve.tower.map(K, Lb)(c) for c in h]
        for r, mult in univariate_roots(hb, Lb):
            if m == 1 and not _exact_degree(curve, Lb, b, r.value):
                continue
            found.append((Lb, r.value, mult))
            count += mult
        if count == deg:
            break
    return found, count == deg


def bezout_sum(curve: GKCurve, H: Plane, m_max: Optional[int] = None) -> BezoutSum:
    """
    Soma de Bézout da seção plana X ∩ H, inclusive pontos fora da torre.

    Cada raiz v0 da resultante com grau ≤ m_max sobre F_{q⁶} tem a fibra
    procurada na torre e somada por ord_P(H); as demais raízes, e o resto de
    fibras que não se decompõem na torre, entram com a multiplicidade da
    resultante.
    """
    K = curve.work
    if H.field != K:
        H = Plane(K, tuple(curve.tower.map(H.field, K)(c) for c in H.coords))
    m_max = min(m_max or curve.tower.m_max, curve.tower.m_max)
    frame, fa, ga = _section_chart(curve, H)
    R = _eliminant(K, fa, ga)
    if not R:
        raise DegenerateConfigurationError(f"resultante identicamente nula em {H}")
    if len(R) - 1 != curve.degree:
        raise CurveConsistencyError(f"grau da resultante {len(R) - 1} ≠ {curve.degree} em {H}")

    result = BezoutSum(plane=H, degree=curve.degree)
    in_tower = 0
    for m in range(1, m_max + 1):
        L = curve.tower.field_for(m)
        to_L = curve.tower.map(K, L)
        RL = R if m == 1 else [to_L(c) for c in R]
        fa_L = fa if m == 1 else fa.map_coefficients(to_L)
        ga_L = ga if m == 1 else ga.map_coefficients(to_L)
        for v0, mu in univariate_roots(RL, L):
            if not _exact_degree(curve, L, m, v0.value):
                continue
            in_tower += mu
            fu = fa_L.substitute("v", v0.value).univariate()
            gu = ga_L.substitute("v", v0.value).univariate()
            if not fu and not gu:
                raise DegenerateConfigurationError("reta inteira contida na interseção")
            h = poly_trim(gu if not fu else fu if not gu else poly_gcd(L, fu, gu))
            if len(h) <= 1:
                raise CurveConsistencyError(f"raiz da resultante sem ponto na fibra em {H}")
            roots, split = _fiber_roots(curve, h, L, m, m_max)
            found = 0
            for Lb, u0, _ in roots:
                to_b = curve.tower.map(K, Lb)
                v = v0.value if Lb == L else to_b(v0.value)
                vec = [0, 0, 0, 0]
                for coeff, row in zip((u0, v, 1), frame):
                    vec = [Lb.add(x, Lb.mul(coeff, to_b(y))) for x, y in zip(vec, row)]
                P = ProjPoint.of(Lb, vec)
                if not curve.contains(P):
                    raise CurveConsistencyError(f"{P} da eliminação não está na curva")
                HL = H if Lb == K else Plane(Lb, tuple(to_b(c) for c in H.coords))
                value = ord_hyperplane(curve, P, HL)
                result.values[P] = value
                if isinstance(value, int):
                    found += value
                else:
                    result.notice = f"ord acima da precisão em {P}"
            if not split:
                if mu <= found:
                    raise CurveConsistencyError(f"fibra incompleta sem multiplicidade restante em {H}")
                result.outside += mu - found
    result.outside += curve.degree - in_tower
    logger.debug(
        "soma de Bézout",
        plano=str(H),
        total=result.total,
        pontos=len(result.values),
        fora_da_torre=result.outside,
    )
    return result


def lemma_order_allowed(q: int, hermitian: bool) -> set:
    if hermitian:
        return {1, q * q - q + 1, q**3 + 1}
    return {1, q, q**3, q**3 + 1}


# ---------------------------------------------------------------------------
# Ramificação
# ---------------------------------------------------------------------------


@dataclass
class RamificationRecord:
    line: Line
    plane: Plane
    point: ProjPoint
    ord: OrdValue
    base: int
    e: int
    field_degree: int

    def to_json(self) -> dict:
        return {
            "line": self.line.to_json(),
            "plane": self.plane.to_json(),
            "point": self.point.to_json(),
            "ord": self.ord,
            "base": self.base,
            "e": self.e,
            "field_degree": self.field_degree,
        }


@dataclass
class FiberSummary:
    plane: Plane
    records: List[RamificationRecord]
    unramified: List[ProjPoint]
    sum_e: int
    complete: bool


@dataclass
class FiberStructure:
    """Dados vetorizados do feixe de ℓ sobre X(L)."""

    line: Line
    cloud: PointCloud
    keys: np.ndarray
    on_line: np.ndarray
    ramified: np.ndarray

    def plane_for_key(self, key: int) -> Plane:
        a, b = self.line.planes
        F = self.line.field
        if key == F.order:
            return b
        return Plane.of(F, [F.sub(x, F.mul(key, y)) for x, y in zip(a.coords, b.coords)])


def fiber_structure(curve: GKCurve, line: Line, m: int = 1) -> FiberStructure:
    """Chave do membro do feixe e marca de ramificação para cada ponto de X(L_m)."""
    L = curve.tower.field_for(m)
    lineL = _embed_line_to(curve, line, L)
    cloud = curve.points(L)
    a, b = lineL.planes
    v1 = vevaluate_plane(L, cloud.coords, a.coords)
    v2 = vevaluate_plane(L, cloud.coords, b.coords)
    on_line = (v1 == 0) & (v2 == 0)
    keys = np.full(len(cloud), L.order, dtype=np.int64)
    nz = v2 != 0
    keys[nz] = L.vmul(v1[nz], L.vinv(v2[nz]))
    keys[on_line] = -1
    ramified = ~on_line & (vpairing(L, cloud.tangents, lineL.plucker) == 0)
    return FiberStructure(lineL, cloud, keys, on_line, ramified)


def special_member(curve: GKCurve, line: Line, P: ProjPoint, m_P: int) -> Tuple[Plane, int]:
    """Membro do feixe (e sua chave) em que o ponto base P tem ord > m_P."""
    br = branch_at(curve, P)
    a, b = line.planes
    F = line.field
    s1 = br.compose_linear(a.coords).coeffs
    s2 = br.compose_linear(b.coords).coeffs
    a0, b0 = s1[m_P], s2[m_P]
    key = F.div(a0, b0) if b0 else F.order
    plane = Plane.of(F, [F.sub(F.mul(b0, x), F.mul(a0, y)) for x, y in zip(a.coords, b.coords)])
    return plane, key


def ramification_profile(
    curve: GKCurve,
    line: Line,
    m: int = 1,
    degree: Optional[DegreeReport] = None,
) -> List[FiberSummary]:
    """
    Fibras de π_ℓ com pontos ramificados ou pontos base, sobre F_{q^(6m)}.

    Pontos fora de ℓ com e = 1 entram apenas na lista `unramified` da fibra.
    Uma fibra é completa quando Σe atinge o grau da projeção.
    """
    if m > curve.tower.m_max:
        raise ValueError(f"m={m} acima de m_max={curve.tower.m_max}")
    degree = degree or projection_degree(curve, line)
    fs = fiber_structure(curve, line, m)
    pts = fs.cloud.points
    by_key: Dict[int, List[RamificationRecord]] = {}

    for i in np.nonzero(fs.ramified)[0]:
        P = pts[i]
        H = fs.plane_for_key(int(fs.keys[i]))
        v = ord_hyperplane(curve, P, H)
        e = v if isinstance(v, int) else curve.degree
        by_key.setdefault(int(fs.keys[i]), []).append(
            RamificationRecord(fs.line, H, P, v, 0, e, 6 * m)
        )

    for i in np.nonzero(fs.on_line)[0]:
        P = pts[i]
        m_P = base_multiplicity(curve, fs.line, P)
        H, key = special_member(curve, fs.line, P, m_P)
        v = ord_hyperplane(curve, P, H)
        e = (v if isinstance(v, int) else curve.degree) - m_P
        by_key.setdefault(key, []).append(RamificationRecord(fs.line, H, P, v, m_P, e, 6 * m))

    fibers = []
    for key, records in by_key.items():
        members = np.nonzero((fs.keys == key) & ~fs.ramified)[0]
        unram = [pts[i] for i in members]
        sum_e = sum(r.e for r in records) + len(unram)
        complete = degree.degree is not None and sum_e == degree.degree
        if degree.degree is not None and sum_e > degree.degree:
            raise CurveConsistencyError(f"Σe = {sum_e} > grau {degree.degree} na fibra {records[0].plane}")
        fibers.append(FiberSummary(records[0].plane, records, unram, sum_e, complete))
    fibers.sort(key=lambda f: f.plane.sort_key)
    return fibers



def order_lemma_suite(curve: GKCurve, sample: Optional[int] = None, seed: int = 0) -> dict:
    """
    ord_P(H) para planos H sobre F_{q²} e pontos P ∈ X(F_{q⁶}) ∩ H.

    Os valores precisam cair em {1, q²−q+1, q³+1} na seção hermitiana e em
    {1, q, q³, q³+1} fora dela. Com `sample`, sorteia esse número de pares.
    """
    K, quad = curve.work, curve.tower.quad
    to_k = curve.tower.map(quad, K)
    duals = to_k.embed_array(point_array(quad, 3))
    cloud = curve.points(K)
    pairs: List[Tuple[int, int]] = []
    for h, row in enumerate(duals):
        hits = np.nonzero(vevaluate_plane(K, cloud.coords, row) == 0)[0]
        pairs.extend((h, int(i)) for i in hits)
    if sample is not None and sample < len(pairs):
        rng = np.random.default_rng(seed)
        chosen = np.sort(rng.choice(len(pairs), size=sample, replace=False))
        pairs = [pairs[int(i)] for i in chosen]

    seen: Dict[str, set] = {"hermitian": set(), "other": set()}
    violations = []
    for h, i in pairs:
        P = cloud.points[i]
        H = Plane(K, tuple(int(c) for c in duals[h]))
        hermitian = P.coords[2] == 0
        v = ord_hyperplane(curve, P, H)
        seen["hermitian" if hermitian else "other"].add(v)
        if v not in lemma_order_allowed(curve.q, hermitian):
            violations.append({"plane": H.to_json(), "point": P.to_json(), "ord": v})
    logger.info("lema de ordem conferido", q=curve.q, pares=len(pairs), violacoes=len(violations))
    return {
        "checked": len(pairs),
        "values": {k: sorted(v, key=str) for k, v in seen.items()},
        "violations": violations,
    }
