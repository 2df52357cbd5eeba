"""
Linha de comando do gkgalois.

Comandos:
- sweep: classifica todas as retas sobre F_q² (e uma amostra sobre F_q⁶)
- points: censo dos pontos de Galois do modelo plano X'
- lemmas: verificações de ordem, seções hermitianas, transitividade e gênero
- aut: relatório dos grupos de automorfismos
- curve: formas, pontos nomeados e contagens da curva

Códigos de saída: 0 tudo confere, 2 divergência com o esperado,
3 veredictos UNKNOWN, 64 erro de uso.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import ValidationError

from . import __version__
from .autgroup import build_catalog, certificate_checks, group_report, hermitian_action, is_doubly_transitive
from .config import ConfigurationError, get_config
from .errors import GKGaloisError
from .galois import get_context, plane_model_census, rh_check_tame, sweep
from .gkcurve import (
    GKCurve,
    birationality_witness,
    build_curve,
    build_plane_model,
    genus_check,
    hasse_weil_count,
    hermitian_line_statistics,
    plane_form,
)
from .localmult import bezout_sum, order_lemma_suite
from .models import CurveReport, GroupReport, LemmaReport, LemmaResult, RHReport, RunConfig
from .pipelines import ReportPipeline
from .projgeom import Plane, enumerate_points
from .workers import SweepExecutor

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_UNKNOWN = 3
EXIT_USAGE = 64

ORDER_SAMPLE_Q3 = 10_000
BEZOUT_SAMPLE = 6


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkgalois",
        description="Verificação de retas e pontos de Galois da curva GK",
    )
    parser.add_argument("--version", action="version", version=f"gkgalois {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep", "classifica as retas e compara com a classificação esperada"),
        ("points", "censo dos pontos de Galois de X'"),
        ("lemmas", "verificações auxiliares"),
        ("aut", "relatório dos grupos de automorfismos"),
        ("curve", "formas, pontos e contagens da curva"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--q", type=int, required=True, help="parâmetro q (2, 3, 4 ou 5)")
        cmd.add_argument("--m-max", type=int, default=None, help="profundidade das extensões nas fibras")
        cmd.add_argument("--jobs", type=int, default=None, help="número de processos")
        cmd.add_argument("--sample", type=int, default=None, help="retas sobre F_q⁶ sorteadas")
        cmd.add_argument("--seed", type=lambda s: int(s, 0), default=None, help="semente dos sorteios")
        cmd.add_argument("--out", default=None, help="diretório dos relatórios")
        cmd.add_argument("--format", default=None, help="json, csv ou text")
        cmd.add_argument("--backend", default=None, help="process ou celery")
        cmd.add_argument("--chunk-size", type=int, default=None, help="retas por lote")
    return parser


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """Ambiente com as flags por cima; valida pelo modelo."""
    config = get_config()
    search, workers, output = config.search, config.workers, config.output

    def pick(value, default):
        return default if value is None else value

    return RunConfig(
        q=args.q,
        m_max=pick(args.m_max, search.m_max),
        jobs=pick(args.jobs, workers.jobs),
        sample=pick(args.sample, search.sample),
        seed=pick(args.seed, search.seed),
        output=pick(args.out, output.directory),
        format=pick(args.format, output.format),
        backend=pick(args.backend, workers.backend),
        chunk_size=pick(args.chunk_size, workers.chunk_size),
        table_limit=search.table_limit,
    )


def context_params(run: RunConfig, sample: Optional[int] = None) -> dict:
    return {
        "q": run.q,
        "m_max": run.m_max,
        "sample": run.sample if sample is None else sample,
        "seed": run.seed,
        "table_limit": run.table_limit,
    }


def _executor(run: RunConfig, params: dict) -> SweepExecutor:
    return SweepExecutor(params, jobs=run.jobs, backend=run.backend, chunk_size=run.chunk_size)


def _curve(run: RunConfig) -> GKCurve:
    return build_curve(run.q, m_max=run.m_max, table_limit=run.table_limit)


def _save(run: RunConfig, report) -> None:
    path = ReportPipeline(run.output, run.format).save(report)
    print(report.summary_text())
    print(f"relatório: {path}")


# ---------------------------------------------------------------------------
# Comandos
# ---------------------------------------------------------------------------


def cmd_sweep(run: RunConfig) -> int:
    params = context_params(run)
    ctx = get_context(**params)
    table = sweep(ctx, _executor(run, params), run.embedded())
    _save(run, table)
    summary = table.summary
    if summary.mismatches or not all(summary.checks.values()):
        return EXIT_MISMATCH
    if summary.unknown:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_points(run: RunConfig) -> int:
    params = context_params(run, sample=0)
    ctx = get_context(**params)
    table = sweep(ctx, _executor(run, params), run.embedded())
    census = plane_model_census(ctx, table, run.embedded())
    _save(run, census)
    summary = census.summary
    if summary.mismatches or not all(summary.checks.values()):
        return EXIT_MISMATCH
    if any(p.verdict.value == "UNKNOWN" for p in census.points):
        return EXIT_UNKNOWN
    return EXIT_OK


LemmaCheck = Callable[[GKCurve, RunConfig], Tuple[bool, dict]]


def lemma_genus(curve: GKCurve, run: RunConfig) -> Tuple[bool, dict]:
    q = curve.q
    g = genus_check(curve)
    return True, {"genus": g, "identity": (q**3 + 1) * q * q, "points": len(curve.points(curve.work))}


def lemma_hermitian(curve: GKCurve, run: RunConfig) -> Tuple[bool, dict]:
    q = curve.q
    stats = hermitian_line_statistics(curve, sample=run.sample, seed=run.seed)
    expected = {1: q**3 + 1, q + 1: q**4 - q**3 + q * q}
    ok = stats["quad"] == expected and set(stats["sample"]) <= {0, 1}
    return ok, {k: {str(n): c for n, c in v.items()} for k, v in stats.items()}


def lemma_order(curve: GKCurve, run: RunConfig) -> Tuple[bool, dict]:
    sample = None if curve.q == 2 else ORDER_SAMPLE_Q3
    result = order_lemma_suite(curve, sample=sample, seed=run.seed)
    return not result["violations"], result


def lemma_double_transitivity(curve: GKCurve, run: RunConfig) -> Tuple[bool, dict]:
    catalog = build_catalog(curve)
    table = hermitian_action(catalog.full, curve)
    return is_doubly_transitive(table), {"order": catalog.full.order}


def lemma_bezout(curve: GKCurve, run: RunConfig) -> Tuple[bool, dict]:
    """Σ ord_P(H) = q³+1 em todos os planos sobre F_{q²} (q = 2) ou em W=0, Z=0 e uma amostra."""
    quad = curve.tower.quad
    planes = [Plane(quad, P.coords) for P in enumerate_points(quad, 3)]
    if curve.q > 2:
        named = [Plane.of(quad, (0, 0, 0, 1)), Plane.of(quad, (0, 0, 1, 0))]
        rest = [H for H in planes if H not in named]
        rng = np.random.default_rng(run.seed)
        chosen = np.sort(rng.choice(len(rest), size=min(BEZOUT_SAMPLE, len(rest)), replace=False))
        planes = named + [rest[int(i)] for i in chosen]
    results = [bezout_sum(curve, H, run.m_max) for H in planes]
    failures = [r.to_json() for r in results if not r.holds]
    return not failures, {
        "checked": len(results),
        "outside_tower": sum(1 for r in results if r.outside),
        "failures": failures,
    }


LEMMAS: List[Tuple[str, LemmaCheck]] = [
    ("genus_identity", lemma_genus),
    ("hermitian_sections", lemma_hermitian),
    ("order_values", lemma_order),
    ("double_transitivity", lemma_double_transitivity),
    ("bezout_sums", lemma_bezout),
]


def cmd_lemmas(run: RunConfig) -> int:
    curve = _curve(run)
    results = []
    for name, check in LEMMAS:
        try:
            passed, detail = check(curve, run)
        except GKGaloisError as exc:
            passed, detail = False, {"erro": str(exc)}
        results.append(LemmaResult(name=name, passed=passed, detail=detail))
        logger.info("lema verificado", lema=name, ok=passed)

    rh: Optional[RHReport] = None
    try:
        rh = rh_check_tame(curve, m_max=run.m_max)
        passed = rh.holds is not False and rh.tame
        detail = {"holds": rh.holds, "notice": rh.notice, "sum_e_minus_1": rh.sum_e_minus_1}
    except GKGaloisError as exc:
        passed, detail = False, {"erro": str(exc)}
    results.append(LemmaResult(name="riemann_hurwitz", passed=passed, detail=detail))
    if rh is not None and rh.notice:
        print(f"aviso: {rh.notice}")

    report = LemmaReport(q=run.q, version=__version__, config=run.embedded(), results=results, rh=rh)
    _save(run, report)
    if not report.passed:
        print(f"FALHA: {report.first_failure}")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_aut(run: RunConfig) -> int:
    curve = _curve(run)
    catalog = build_catalog(curve)
    data = group_report(curve, catalog)
    report = GroupReport(
        version=__version__,
        config=run.embedded(),
        checks=certificate_checks(curve, catalog),
        **data,
    )
    _save(run, report)
    ok = report.doubly_transitive and report.faithful and all(report.checks.values())
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_curve(run: RunConfig) -> int:
    curve = _curve(run)
    q, tower = run.q, curve.tower
    counts: Dict[str, int] = {}
    expected: Dict[str, int] = {}
    for m, L in sorted(tower.extensions.items()):
        counts[L.name] = len(curve.points(L))
        expected[L.name] = hasse_weil_count(q, m)
    model = build_plane_model(curve)
    report = CurveReport(
        q=q,
        version=__version__,
        config=run.embedded(),
        forms={"F1": str(curve.F1), "F2": str(curve.F2), "F'": str(plane_form(q, curve.work))},
        named_points={
            "P_inf": curve.P_inf.to_json(),
            "R": curve.R.to_json(),
            "R_prime": curve.R_prime.to_json(),
        },
        named_lines={"line_inf": curve.line_inf.to_json(), "line_0": curve.line_0.to_json()},
        counts=counts,
        hasse_weil=expected,
        genus=genus_check(curve),
        birationality=birationality_witness(curve, model),
    )
    _save(run, report)
    return EXIT_OK if counts == expected else EXIT_MISMATCH


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "sweep": cmd_sweep,
    "points": cmd_points,
    "lemmas": cmd_lemmas,
    "aut": cmd_aut,
    "curve": cmd_curve,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run = run_config_from_args(args)
    except (ValidationError, ConfigurationError) as exc:
        print(f"erro de uso: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logger.info("comando iniciado", comando=args.command, q=run.q, jobs=run.jobs)
    try:
        return COMMANDS[args.command](run)
    except GKGaloisError as exc:
        logger.error("verificação interrompida", comando=args.command, erro=str(exc))
        print(f"FALHA: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
