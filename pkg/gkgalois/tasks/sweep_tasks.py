"""
Tarefas Celery da varredura de retas.

Cada tarefa classifica um lote de índices de retas; o contexto (curva,
grupo, retas) é reconstruído uma vez por processo worker a partir dos
parâmetros da execução.
"""

from typing import Any, Dict, List

import structlog

from ..celery_app import celery_app
from ..galois import classify_chunk, get_context

logger = structlog.get_logger(__name__)


@celery_app.task(name="gkgalois.classify_chunk", bind=True)
def classify_chunk_task(self, params: Dict[str, Any], indices: List[int]) -> List[dict]:
    """
    Classifica um lote de retas.

    Args:
        params: q, m_max, sample, seed e table_limit da execução
        indices: índices das retas no contexto

    Returns:
        Veredictos serializados, na ordem dos índices
    """
    ctx = get_context(**params)
    logger.info("tarefa de lote iniciada", tarefa=self.request.id, q=ctx.q, retas=len(indices))
    return classify_chunk(ctx, indices)
