"""
Retas de Galois da curva GK.

Decisão por retas (subgrupo de decomposição contra grau da projeção, com
testemunhas de ramificação para as negativas), varredura das retas sobre
F_q² mais uma amostra sobre F_q⁶, censo dos pontos de Galois do modelo
plano X' e a verificação de Riemann–Hurwitz para ℓ₀.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np
import structlog

from . import __version__
from .autgroup import MatrixGroup, closure, eta_elements, full_group, vapply_point
from .errors import CurveConsistencyError, FieldMismatchError
from .ff import DEFAULT_TABLE_LIMIT, TowerMap
from .gkcurve import (
    GKCurve,
    build_curve,
    build_plane_model,
    line_through_R,
    project_line_from_R,
)
from .localmult import (
    DegreeReport,
    FiberStructure,
    base_multiplicity,
    fiber_structure,
    ord_hyperplane,
    projection_degree,
    ramification_profile,
    special_member,
)
from .models import (
    MODULO_GROUP,
    CensusReport,
    CensusSummary,
    ClassificationSummary,
    ClassificationTable,
    Contact,
    Evidence,
    GaloisVerdict,
    PlanePointVerdict,
    RamificationEntry,
    RHReport,
    Verdict,
    Witness,
)
from .projgeom import (
    Line,
    Plane,
    ProjPoint,
    apply,
    embed_line,
    embed_point,
    enumerate_lines,
    enumerate_points,
    is_rational_over,
    line_through,
    sorted_lines,
    vnormalize,
    vplucker_from_points,
)

logger = structlog.get_logger(__name__)

EQUIVARIANCE_PAIRS = 100
DEFAULT_SEED = 0x6B6B


# ---------------------------------------------------------------------------
# Utilitários
# ---------------------------------------------------------------------------


def quad_map(curve: GKCurve) -> TowerMap:
    return curve.tower.map(curve.tower.quad, curve.work)


def work_line(curve: GKCurve, line: Line) -> Line:
    """A reta sobre K = F_q⁶."""
    if line.field == curve.work:
        return line
    return embed_line(line, curve.tower.map(line.field, curve.work))


def in_plane_z(line: Line) -> bool:
    return all(P.coords[2] == 0 for P in line.span)


def theorem_predicate(curve: GKCurve, line: Line) -> bool:
    """Reta sobre F_q² que passa por R' = (0:0:1:0) ou está contida em {Z=0}."""
    lk = work_line(curve, line)
    if not is_rational_over(lk, quad_map(curve)):
        return False
    return lk.contains(curve.R_prime) or in_plane_z(lk)


def pencil_triple(line: Line) -> Tuple[Plane, Plane, Plane]:
    """Três membros distintos do feixe de planos da reta."""
    a, b = line.planes
    F = line.field
    c = Plane.of(F, [F.add(x, y) for x, y in zip(a.coords, b.coords)])
    return a, b, c


def _matrix_text(group: MatrixGroup) -> List[List[List[str]]]:
    F = group.field
    return [
        [[F.text(int(c)) for c in row[4 * i : 4 * i + 4]] for i in range(4)]
        for row in group.elements
    ]


# ---------------------------------------------------------------------------
# Decisão por reta
# ---------------------------------------------------------------------------


def decomposition_subgroup(line: Line, group: MatrixGroup) -> MatrixGroup:
    """
    Elementos de G que fixam todos os planos do feixe de ℓ.

    Basta fixar três membros distintos: uma projetividade de P¹ com três
    pontos fixos é a identidade.
    """
    if line.field != group.field:
        raise FieldMismatchError("reta e grupo em corpos diferentes")
    mask = np.ones(group.order, dtype=bool)
    for H in pencil_triple(line):
        mask &= group.plane_fixed_mask(H.coords)
    return group.subgroup(mask, name="G_l")


def _fiber_mismatch(curve: GKCurve, fs: FiberStructure, m: int) -> Tuple[Optional[Witness], bool]:
    """Procura uma fibra com índices de ramificação distintos; devolve (testemunha, busca limpa)."""
    pts = fs.cloud.points
    clean = True
    entries: Dict[int, List[Tuple[ProjPoint, int]]] = {}

    for i in np.nonzero(fs.ramified)[0]:
        key = int(fs.keys[i])
        v = ord_hyperplane(curve, pts[i], fs.plane_for_key(key))
        if not isinstance(v, int):
            clean = False
            continue
        entries.setdefault(key, []).append((pts[i], v))

    for i in np.nonzero(fs.on_line)[0]:
        P = pts[i]
        m_P = base_multiplicity(curve, fs.line, P)
        H, key = special_member(curve, fs.line, P, m_P)
        v = ord_hyperplane(curve, P, H)
        if not isinstance(v, int):
            clean = False
            continue
        entries.setdefault(key, []).append((P, v - m_P))

    for key in sorted(entries, key=lambda k: fs.plane_for_key(k).sort_key):
        found = sorted(entries[key], key=lambda pe: pe[0].sort_key)
        unram = np.nonzero((fs.keys == key) & ~fs.ramified)[0]
        if unram.size:
            found.append((pts[int(unram[0])], 1))
        first_P, first_e = found[0]
        for P, e in found[1:]:
            if e != first_e:
                H = fs.plane_for_key(key)
                witness = Witness(
                    plane=H.to_json(),
                    points=[first_P.to_json(), P.to_json()],
                    e=[first_e, e],
                    field_degree=6 * m,
                )
                logger.debug("testemunha de ramificação", reta=str(fs.line), plano=str(H))
                return witness, clean
    return None, clean


def nongalois_witness(curve: GKCurve, line: Line, m_max: Optional[int] = None) -> Tuple[Optional[Witness], bool]:
    """
    Testemunha de não-Galois: dois pontos de uma fibra com e distintos.

    Returns:
        (testemunha ou None, True se todas as fibras até F_q^(6·m_max) foram examinadas)
    """
    tower = curve.tower
    m_max = min(m_max or tower.m_max, tower.m_max)
    exhaustive = True
    lk = work_line(curve, line)
    for m in range(1, m_max + 1):
        witness, clean = _fiber_mismatch(curve, fiber_structure(curve, lk, m), m)
        if witness is not None:
            return witness, True
        exhaustive = exhaustive and clean
    return None, exhaustive


def is_galois(
    curve: GKCurve,
    line: Line,
    group: MatrixGroup,
    m_max: Optional[int] = None,
    degree: Optional[DegreeReport] = None,
) -> GaloisVerdict:
    """
    Decide se a projeção a partir de ℓ é Galois.

    GALOIS quando |G_ℓ| = d. Caso contrário procura uma testemunha de
    ramificação; sem ela, NOT_GALOIS condicional ao grupo gerado quando a
    busca foi exaustiva, senão UNKNOWN.
    """
    lk = work_line(curve, line)
    degree = degree or projection_degree(curve, lk, m_max)
    sub = decomposition_subgroup(lk, group)
    order = sub.order
    if degree.complete and order > degree.degree:
        raise CurveConsistencyError(f"|G_ℓ| = {order} > grau {degree.degree} em {line}")

    info = line.to_json()
    common = dict(
        plucker=info["plucker"],
        span=info["span"],
        rational=is_rational_over(lk, quad_map(curve)),
        degree=degree.degree,
        degree_bounds=[degree.lower, degree.upper],
        contacts=[Contact(point=P.to_json(), base=m) for P, m in degree.contacts],
        subgroup_order=order,
        predicate=theorem_predicate(curve, lk),
    )
    if degree.complete and order == degree.degree:
        verdict = GaloisVerdict(
            verdict=Verdict.GALOIS,
            evidence=Evidence(kind="subgroup", elements=_matrix_text(sub)),
            **common,
        )
        return verdict.with_line(line)

    witness, exhaustive = nongalois_witness(curve, lk, m_max)
    if witness is not None:
        verdict = GaloisVerdict(
            verdict=Verdict.NOT_GALOIS,
            evidence=Evidence(kind="ramification", witness=witness),
            **common,
        )
    elif exhaustive and (degree.complete or order < degree.lower):
        verdict = GaloisVerdict(
            verdict=Verdict.NOT_GALOIS,
            conditional=True,
            evidence=Evidence(kind="exhaustion", note=MODULO_GROUP),
            **common,
        )
    else:
        logger.warning("veredicto indeterminado", reta=str(line), ordem=order, grau=[degree.lower, degree.upper])
        verdict = GaloisVerdict(
            verdict=Verdict.UNKNOWN,
            evidence=Evidence(kind="none", note="fibras incompletas ou ord acima da precisão"),
            **common,
        )
    return verdict.with_line(line)


def verify_galois(curve: GKCurve, verdict: GaloisVerdict, group: MatrixGroup) -> bool:
    """Reconfere um veredicto GALOIS: |G_ℓ| = d e cada elemento fixa três membros do feixe."""
    lk = work_line(curve, verdict.line)
    sub = decomposition_subgroup(lk, group)
    if sub.order != verdict.degree:
        return False
    triple = pencil_triple(lk)
    return all(apply(g, H) == H for g in sub for H in triple)


# ---------------------------------------------------------------------------
# Contexto compartilhado pelos workers
# ---------------------------------------------------------------------------


@dataclass
class SweepContext:
    """Curva, grupo e retas de uma varredura; somente leitura depois de construído."""

    q: int
    m_max: int
    seed: int
    curve: GKCurve
    group: MatrixGroup
    eta: MatrixGroup
    lines: List[Line]
    sampled: List[Line]

    @property
    def total(self) -> int:
        return len(self.lines) + len(self.sampled)

    def item(self, idx: int) -> Line:
        n = len(self.lines)
        return self.lines[idx] if idx < n else self.sampled[idx - n]


def sample_lines(curve: GKCurve, n: int, seed: int) -> List[Line]:
    """`n` retas distintas sobre F_q⁶ que não são racionais sobre F_q²."""
    K = curve.work
    to_k = quad_map(curve)
    rng = np.random.default_rng(seed)
    found: Dict[Tuple[int, ...], Line] = {}
    while len(found) < n:
        raw = rng.integers(0, K.order, size=(2, 4))
        if not raw[0].any() or not raw[1].any():
            continue
        P, Q = ProjPoint.of(K, raw[0]), ProjPoint.of(K, raw[1])
        if P == Q:
            continue
        line = line_through(P, Q)
        if line.plucker in found or is_rational_over(line, to_k):
            continue
        found[line.plucker] = line
    return sorted_lines(list(found.values()))


@lru_cache(maxsize=4)
def get_context(
    q: int,
    m_max: int = 3,
    sample: int = 0,
    seed: int = DEFAULT_SEED,
    table_limit: int = DEFAULT_TABLE_LIMIT,
) -> SweepContext:
    """Constrói (uma vez por processo) o contexto da varredura."""
    curve = build_curve(q, m_max=m_max, table_limit=table_limit)
    group = full_group(curve)
    eta = closure(eta_elements(curve), curve.work, name="eta")
    lines = sorted_lines(list(enumerate_lines(curve.tower.quad)))
    sampled = sample_lines(curve, sample, seed) if sample else []
    logger.info("contexto da varredura pronto", q=q, retas=len(lines), amostra=len(sampled), grupo=group.order)
    return SweepContext(q, curve.tower.m_max, seed, curve, group, eta, lines, sampled)


def classify_chunk(ctx: SweepContext, indices: Sequence[int]) -> List[dict]:
    """Veredictos serializados de um lote de retas do contexto."""
    out = []
    for idx in indices:
        verdict = is_galois(ctx.curve, ctx.item(int(idx)), ctx.group, ctx.m_max)
        out.append(verdict.model_dump(mode="json"))
    logger.debug("lote classificado", q=ctx.q, inicio=int(indices[0]) if indices else None, retas=len(indices))
    return out


# ---------------------------------------------------------------------------
# Varredura
# ---------------------------------------------------------------------------


def orbit_of_line(group: MatrixGroup, line: Line) -> Set[Tuple[int, ...]]:
    """Plücker canônico das imagens de ℓ por todos os elementos do grupo."""
    K = group.field
    A, B = line.span
    PA = vapply_point(K, group.elements, A.coords)
    PB = vapply_point(K, group.elements, B.coords)
    plk = np.unique(vnormalize(K, vplucker_from_points(K, PA, PB)), axis=0)
    return {tuple(int(c) for c in row) for row in plk}


def equivariance_check(
    ctx: SweepContext,
    verdicts: Sequence[GaloisVerdict],
    pairs: int = EQUIVARIANCE_PAIRS,
) -> bool:
    """Para pares (g, ℓ) sorteados, gℓ tem o mesmo grau e o mesmo |G_ℓ| (e veredicto, se tabelado)."""
    curve, group = ctx.curve, ctx.group
    rng = np.random.default_rng(ctx.seed)
    table = {work_line(curve, v.line).plucker: v for v in verdicts}
    for _ in range(pairs):
        g = group.element(int(rng.integers(group.order)))
        v = verdicts[int(rng.integers(len(verdicts)))]
        image = apply(g, work_line(curve, v.line))
        other = table.get(image.plucker)
        if other is not None:
            if other.verdict != v.verdict or other.degree != v.degree:
                logger.error("equivariância violada", reta=v.plucker, imagem=other.plucker)
                return False
            continue
        d = projection_degree(curve, image, ctx.m_max)
        if d.degree != v.degree or decomposition_subgroup(image, group).order != v.subgroup_order:
            logger.error("equivariância violada", reta=v.plucker, imagem=str(image))
            return False
    return True


def eta_intersection_check(ctx: SweepContext, empty: Sequence[GaloisVerdict]) -> bool:
    """G_ℓ ∩ G_ℓ' contém o subgrupo η para duas retas de Galois vazias distintas."""
    if len(empty) < 2:
        return False
    a = decomposition_subgroup(work_line(ctx.curve, empty[0].line), ctx.group)
    b = decomposition_subgroup(work_line(ctx.curve, empty[1].line), ctx.group)
    meet = a.intersection(b)
    return ctx.eta.is_subgroup_of(meet) and meet.order > 1


def summarize(ctx: SweepContext, lines: List[GaloisVerdict], sample: List[GaloisVerdict]) -> ClassificationSummary:
    q, curve = ctx.q, ctx.curve
    galois = [v for v in lines if v.verdict == Verdict.GALOIS]
    through = [v for v in galois if work_line(curve, v.line).contains(curve.R_prime)]
    in_z = [v for v in galois if in_plane_z(v.line)]
    empty = [v for v in through if not v.contacts]
    everything = lines + sample

    mismatches = [
        v.plucker
        for v in everything
        if v.verdict != Verdict.UNKNOWN and (v.verdict == Verdict.GALOIS) != v.predicate
    ]
    for v in mismatches:
        logger.error("divergência com a classificação", reta=v)

    degree_q3 = {work_line(curve, v.line).plucker for v in galois if v.degree == q**3}
    orbit = orbit_of_line(ctx.group, curve.line_inf)
    allowed = {q**3 + 1, q**3, q**3 - q, q**3 - q * q + q}
    checks = {
        "degree_classes": all(v.degree in allowed for v in galois),
        "empty_through_r_prime": len(empty) == q**4 - q**3 + q * q,
        "orbit_line_inf": orbit == degree_q3 and len(orbit) == q**3 + 1,
        "eta_intersection": eta_intersection_check(ctx, empty),
        "equivariance": equivariance_check(ctx, lines),
        "galois_soundness": all(verify_galois(curve, v, ctx.group) for v in galois),
    }
    return ClassificationSummary(
        galois_total=len(galois),
        by_degree={str(k): n for k, n in sorted(Counter(v.degree for v in galois).items())},
        through_r_prime=len(through),
        in_plane_z=len(in_z),
        empty_through_r_prime=len(empty),
        unknown=sum(v.verdict == Verdict.UNKNOWN for v in everything),
        conditional=sum(v.conditional for v in everything),
        witnessed=sum(v.evidence.witness is not None for v in everything),
        non_galois_degrees={
            str(k): n
            for k, n in sorted(
                Counter(v.degree for v in lines if v.verdict != Verdict.GALOIS).items(),
                key=lambda kv: (kv[0] is None, kv[0] or 0),
            )
        },
        sample_galois=sum(v.verdict == Verdict.GALOIS for v in sample),
        mismatches=mismatches,
        checks=checks,
    )


Runner = Callable[[Sequence[int]], List[dict]]


def sweep(ctx: SweepContext, runner: Optional[Runner] = None, config: Optional[dict] = None) -> ClassificationTable:
    """
    Classifica todas as retas do contexto.

    Args:
        ctx: contexto com curva, grupo e retas
        runner: executa a classificação de uma lista de índices e devolve os
            veredictos serializados na mesma ordem; por padrão, no processo atual
        config: cópia da configuração embutida no relatório
    """
    indices = list(range(ctx.total))
    raw = runner(indices) if runner is not None else classify_chunk(ctx, indices)
    verdicts = [GaloisVerdict.model_validate(r).with_line(ctx.item(i)) for i, r in zip(indices, raw)]
    lines = verdicts[: len(ctx.lines)]
    sample = verdicts[len(ctx.lines) :]
    summary = summarize(ctx, lines, sample)
    logger.info(
        "varredura concluída",
        q=ctx.q,
        galois=summary.galois_total,
        desconhecidas=summary.unknown,
        divergencias=len(summary.mismatches),
    )
    return ClassificationTable(
        q=ctx.q,
        version=__version__,
        config=config or {},
        lines=lines,
        sample=sample,
        summary=summary,
    )


# ---------------------------------------------------------------------------
# Censo de pontos de Galois do modelo plano
# ---------------------------------------------------------------------------


def _plane_z_points(curve: GKCurve) -> List[ProjPoint]:
    """Pontos de X' ∩ {Z=0} sobre K."""
    K = curve.work
    model = build_plane_model(curve)
    xs = np.arange(K.order, dtype=np.int64)
    cols = [xs, np.zeros_like(xs), np.ones_like(xs)]
    hits = [ProjPoint(K, (int(x), 0, 1)) for x in xs[model.form.veval(cols) == 0]]
    if model.contains(ProjPoint(K, (1, 0, 0))):
        hits.append(ProjPoint(K, (1, 0, 0)))
    return sorted(hits, key=lambda P: P.sort_key)


def _is_smooth_inner_form(curve: GKCurve, P: ProjPoint) -> bool:
    """(α:0:β) com α^qβ + αβ^q = 0."""
    F, q = P.field, curve.q
    a, z, b = P.coords
    return z == 0 and F.add(F.mul(F.pow(a, q), b), F.mul(a, F.pow(b, q))) == 0


def plane_model_census(ctx: SweepContext, table: ClassificationTable, config: Optional[dict] = None) -> CensusReport:
    """
    Classifica os pontos de P² pelas retas correspondentes por R.

    Cobre todos os pontos sobre F_q² e os de X' ∩ {Z=0} sobre F_q⁶.
    """
    curve = ctx.curve
    q, K, quad = ctx.q, curve.work, curve.tower.quad
    to_k = quad_map(curve)
    model = build_plane_model(curve)
    herm = [embed_point(P, to_k) for P in curve.hermitian_section()]
    by_plucker = {v.line.plucker: v for v in table.lines}
    correspondence = True

    def tag_of(Pk: ProjPoint) -> str:
        if not model.contains(Pk):
            return "outer"
        return "singular" if model.is_singular(Pk) else "inner"

    def entry(Pk: ProjPoint, line: Line, v: GaloisVerdict, shown: ProjPoint) -> PlanePointVerdict:
        tag = tag_of(Pk)
        lk = work_line(curve, line)
        provenance = [H.to_json() for H in herm if lk.contains(H)] if tag == "singular" else []
        expected = Pk.coords == (0, 1, 0) or (tag != "outer" and Pk.coords[1] == 0)
        return PlanePointVerdict(
            point=shown.to_json(),
            line=v.plucker,
            tag=tag,
            degree=v.degree,
            verdict=v.verdict,
            expected=expected,
            provenance=provenance,
        )

    census: List[Tuple[ProjPoint, PlanePointVerdict]] = []
    for P in enumerate_points(quad, 2):
        line = line_through_R(P)
        correspondence = correspondence and project_line_from_R(line) == P
        v = by_plucker[line.plucker]
        census.append((embed_point(P, to_k), entry(embed_point(P, to_k), line, v, P)))

    for Pk in _plane_z_points(curve):
        if all(K.in_subfield(c, quad.k) for c in Pk.coords):
            continue
        line = line_through_R(Pk)
        v = is_galois(curve, line, ctx.group, ctx.m_max)
        census.append((Pk, entry(Pk, line, v, Pk)))

    points = [e for _, e in census]
    galois = [(Pk, e) for Pk, e in census if e.verdict == Verdict.GALOIS]
    inner = [(Pk, e) for Pk, e in galois if e.tag == "inner"]
    outer = [(Pk, e) for Pk, e in galois if e.tag == "outer"]
    singular = [(Pk, e) for Pk, e in galois if e.tag == "singular"]
    mismatches = [e.point for e in points if (e.verdict == Verdict.GALOIS) != e.expected and e.verdict != Verdict.UNKNOWN]

    sing_z = {P.coords for P in model.singular_points(K) if P.coords[1] == 0}
    tagged_sing = {Pk.coords for Pk, e in census if e.tag == "singular"}
    checks = {
        "inner_smooth": len(inner) == q + 1 and all(_is_smooth_inner_form(curve, Pk) for Pk, _ in inner),
        "unique_outer": len(outer) == 1 and outer[0][0].coords == (0, 1, 0),
        "outer_degree": len(outer) == 1 and outer[0][1].degree == q**3 + 1,
        "singular_on_z_galois": sing_z == tagged_sing and len(singular) == len(sing_z),
        "correspondence": correspondence,
    }
    logger.info("censo de pontos concluído", q=q, galois=len(galois), internos=len(inner), externos=len(outer))
    return CensusReport(
        q=q,
        version=__version__,
        config=config or {},
        points=points,
        summary=CensusSummary(
            galois_total=len(galois),
            inner_smooth=len(inner),
            outer=len(outer),
            singular=len(singular),
            mismatches=mismatches,
            checks=checks,
        ),
    )


# ---------------------------------------------------------------------------
# Riemann–Hurwitz
# ---------------------------------------------------------------------------


def rh_check_tame(curve: GKCurve, line: Optional[Line] = None, m_max: Optional[int] = None) -> RHReport:
    """
    Confere 2g − 2 = −2d + Σ(e − 1) para a projeção a partir de ℓ₀.

    Fibras incompletas tornam o resultado parcial: a identidade não é
    avaliada e o relatório traz o aviso.
    """
    q, K = curve.q, curve.work
    line = work_line(curve, line or curve.line_0)
    m_max = min(m_max or curve.tower.m_max, curve.tower.m_max)
    degree = projection_degree(curve, line, m_max)
    records: List[RamificationEntry] = []
    complete = degree.complete
    for m in range(1, m_max + 1):
        to_L = curve.tower.map(K, curve.tower.field_for(m)) if m > 1 else None
        for fiber in ramification_profile(curve, line, m, degree):
            recs = [r for r in fiber.records if to_L is None or not is_rational_over(r.point, to_L)]
            recs = [r for r in recs if r.e > 1 or r.base > 0]
            if not recs:
                continue
            complete = complete and fiber.complete
            records += [
                RamificationEntry(
                    point=r.point.to_json(),
                    plane=r.plane.to_json(),
                    ord=r.ord,
                    base=r.base,
                    e=r.e,
                    field_degree=r.field_degree,
                )
                for r in recs
            ]
    g = curve.genus
    d = degree.degree if degree.degree is not None else degree.upper
    total = sum(r.e - 1 for r in records)
    tame = all(r.e % curve.tower.p != 0 for r in records)
    lhs, rhs = 2 * g - 2, -2 * d + total
    holds = lhs == rhs if complete else None
    notice = "" if complete else "fibras incompletas até m_max; identidade não avaliada"
    if complete and not holds:
        logger.error("Riemann–Hurwitz falhou", q=q, esquerda=lhs, direita=rhs)
    return RHReport(
        q=q,
        line=line.to_json()["plucker"],
        genus=g,
        degree=d,
        records=records,
        sum_e_minus_1=total,
        lhs=lhs,
        rhs=rhs,
        complete=complete,
        tame=tame,
        holds=holds,
        notice=notice,
    )
