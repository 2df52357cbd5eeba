"""
Configuração Celery para a varredura distribuída.
"""

from celery import Celery

from .config import get_config

_celery = get_config().celery

celery_app = Celery(
    "gkgalois",
    broker=_celery.broker_url,
    backend=_celery.result_backend,
    include=["gkgalois.tasks.sweep_tasks"],
)

celery_app.conf.update(
    task_serializer="json",
    result_serializer="json",
    accept_content=["json"],
    enable_utc=True,
    task_default_queue="sweep",
    task_always_eager=_celery.eager,
    task_eager_propagates=True,
    worker_prefetch_multiplier=1,
)
