"""
Testes da execução em lotes da varredura.

Este módulo testa:
- Particionamento determinístico em lotes
- Backends em processo, pool de processos e Celery (modo eager)
- Script de inicialização dos workers Celery
"""

import pytest

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.galois import classify_chunk
from gkgalois.scripts.start_workers import start_celery_worker, worker_command
from gkgalois.workers import SweepExecutor

PARAMS = {"q": 2, "m_max": 3, "sample": 0}


class TestSweepExecutor:
    """Testes para SweepExecutor."""

    def test_chunks(self):
        """Testa lotes consecutivos com o último menor."""
        executor = SweepExecutor(PARAMS, chunk_size=2)
        assert executor.chunks(range(5)) == [[0, 1], [2, 3], [4]]
        assert executor.chunks([]) == []

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            ({"jobs": 0}, "maiores ou iguais a 1"),
            ({"chunk_size": 0}, "maiores ou iguais a 1"),
            ({"backend": "threads"}, "backend desconhecido"),
        ],
    )
    def test_invalid_arguments(self, kwargs, message):
        """Testa validação dos argumentos."""
        with pytest.raises(ValueError, match=message):
            SweepExecutor(PARAMS, **kwargs)

    def test_inline_matches_classify_chunk(self, ctx2, mocker):
        """Testa que a execução em processo preserva a ordem dos índices."""
        mocker.patch("gkgalois.workers.pool.get_context", return_value=ctx2)
        executor = SweepExecutor(PARAMS, chunk_size=2, progress=False)
        indices = [4, 0, 3, 1, 2]
        assert executor(indices) == classify_chunk(ctx2, indices)

    def test_pool_preserves_order(self, ctx2, mocker):
        """Testa que o pool de processos devolve os lotes na ordem de envio."""
        mocker.patch("gkgalois.workers.pool.get_context", return_value=ctx2)
        indices = list(range(6))
        pooled = SweepExecutor(PARAMS, jobs=2, chunk_size=2, progress=False)(indices)
        assert pooled == classify_chunk(ctx2, indices)

    def test_celery_eager(self, ctx2, mocker):
        """Testa o backend Celery em modo eager."""
        mocker.patch("gkgalois.tasks.sweep_tasks.get_context", return_value=ctx2)
        indices = [5, 6, 7]
        result = SweepExecutor(PARAMS, backend="celery", chunk_size=2, progress=False)(indices)
        assert result == classify_chunk(ctx2, indices)


class TestStartWorkers:
    """Testes do script de workers."""

    def test_worker_command(self):
        """Testa o comando montado."""
        cmd = worker_command(3, "debug")
        assert cmd[:5] == [sys.executable, "-m", "celery", "-A", "gkgalois.celery_app"]
        assert "--concurrency=3" in cmd
        assert "--loglevel=debug" in cmd
        assert cmd[cmd.index("-Q") + 1] == "sweep"

    def test_memory_broker_refused(self, clean_env, capsys):
        """Testa recusa do broker em memória."""
        assert start_celery_worker(2) == 64
        assert "GKG_BROKER_URL" in capsys.readouterr().out

    def test_worker_started(self, clean_env, monkeypatch, mocker):
        """Testa que o worker é iniciado com execução não eager."""
        monkeypatch.setenv("GKG_BROKER_URL", "redis://localhost:6379/0")
        popen = mocker.patch("gkgalois.scripts.start_workers.subprocess.Popen")
        popen.return_value.wait.return_value = 0
        assert start_celery_worker(2) == 0
        args, kwargs = popen.call_args
        assert args[0] == worker_command(2)
        assert kwargs["env"]["GKG_CELERY_EAGER"] == "false"


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
