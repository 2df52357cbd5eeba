"""
Script para iniciar workers Celery da varredura distribuída.

Os workers consomem a fila "sweep"; a CLI com `--backend celery` envia
os lotes e recolhe os resultados na ordem dos índices.
"""

import argparse
import os
import subprocess
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from ..config import get_config


def worker_command(concurrency: int, loglevel: str = "info") -> List[str]:
    """Monta o comando do worker Celery."""
    return [
        sys.executable,
        "-m",
        "celery",
        "-A",
        "gkgalois.celery_app",
        "worker",
        "-Q",
        "sweep",
        f"--loglevel={loglevel}",
        f"--concurrency={concurrency}",
    ]


def start_celery_worker(concurrency: int, loglevel: str = "info") -> int:
    """Inicia o worker Celery e aguarda até Ctrl+C."""
    celery = get_config().celery
    if celery.broker_url.startswith("memory://"):
        print(" Broker em memória não é compartilhado entre processos; defina GKG_BROKER_URL")
        return 64

    env = os.environ.copy()
    env["GKG_CELERY_EAGER"] = "false"
    cmd = worker_command(concurrency, loglevel)

    print(f" Comando: {' '.join(cmd)}")
    print(f" Broker: {celery.broker_url}")
    print(f" Concorrência: {concurrency} workers")
    print("-" * 50)

    process = subprocess.Popen(cmd, env=env, cwd=Path(__file__).resolve().parents[2])
    print(f" Worker iniciado, PID: {process.pid}")
    print(" Pressione Ctrl+C para parar")
    try:
        return process.wait()
    except KeyboardInterrupt:
        print("\n Parando worker...")
        process.terminate()
        process.wait()
        print(" Worker parado")
        return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Função principal."""
    parser = argparse.ArgumentParser(description="Inicia workers Celery da varredura")
    parser.add_argument("--concurrency", type=int, default=get_config().workers.jobs)
    parser.add_argument("--loglevel", default="info")
    args = parser.parse_args(argv)
    return start_celery_worker(args.concurrency, args.loglevel)


if __name__ == "__main__":
    sys.exit(main())
