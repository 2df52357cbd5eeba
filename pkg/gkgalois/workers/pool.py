"""
Execução dos lotes da varredura: no processo atual, num pool de processos
ou via Celery. Os resultados voltam sempre na ordem dos índices.
"""

import multiprocessing
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Sequence

import structlog
from tqdm import tqdm

from ..galois import classify_chunk, get_context

logger = structlog.get_logger(__name__)


def _run_chunk(params: Dict[str, Any], indices: List[int]) -> List[dict]:
    return classify_chunk(get_context(**params), indices)


class SweepExecutor:
    """
    Particiona os índices em lotes determinísticos e executa cada lote.

    Args:
        params: argumentos de `get_context` (q, m_max, sample, seed, table_limit)
        jobs: número de processos
        backend: "process" ou "celery"
        chunk_size: retas por lote
        progress: barra de progresso (só em terminal)
    """

    def __init__(
        self,
        params: Dict[str, Any],
        jobs: int = 1,
        backend: str = "process",
        chunk_size: int = 64,
        progress: bool = True,
    ):
        if jobs < 1 or chunk_size < 1:
            raise ValueError("jobs e chunk_size devem ser maiores ou iguais a 1")
        if backend not in ("process", "celery"):
            raise ValueError(f"backend desconhecido: {backend}")
        self.params = dict(params)
        self.jobs = jobs
        self.backend = backend
        self.chunk_size = chunk_size
        self.progress = progress and sys.stderr.isatty()

    def chunks(self, indices: Sequence[int]) -> List[List[int]]:
        items = [int(i) for i in indices]
        return [items[i : i + self.chunk_size] for i in range(0, len(items), self.chunk_size)]

    def __call__(self, indices: Sequence[int]) -> List[dict]:
        chunks = self.chunks(indices)
        logger.info("varredura em lotes", lotes=len(chunks), jobs=self.jobs, backend=self.backend)
        with tqdm(total=len(chunks), desc="varredura", disable=not self.progress) as bar:
            if self.backend == "celery":
                results = self._run_celery(chunks, bar)
            elif self.jobs == 1:
                results = self._run_inline(chunks, bar)
            else:
                results = self._run_pool(chunks, bar)
        return [verdict for chunk in results for verdict in chunk]

    def _run_inline(self, chunks: List[List[int]], bar: tqdm) -> List[List[dict]]:
        ctx = get_context(**self.params)
        out = []
        for chunk in chunks:
            out.append(classify_chunk(ctx, chunk))
            bar.update(1)
        return out

    def _run_pool(self, chunks: List[List[int]], bar: tqdm) -> List[List[dict]]:
        # o contexto é construído antes do fork e herdado pelos filhos
        get_context(**self.params)
        mp_context = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=self.jobs, mp_context=mp_context) as pool:
            futures = [pool.submit(_run_chunk, self.params, chunk) for chunk in chunks]
            out = []
            for fut in futures:
                out.append(fut.result())
                bar.update(1)
        return out

    def _run_celery(self, chunks: List[List[int]], bar: tqdm) -> List[List[dict]]:
        from ..tasks.sweep_tasks import classify_chunk_task

        pending = [classify_chunk_task.delay(self.params, chunk) for chunk in chunks]
        out = []
        for res in pending:
            out.append(res.get())
            bar.update(1)
        return out
