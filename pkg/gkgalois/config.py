"""
Configurações do gkgalois.

Este módulo centraliza as configurações, carregando variáveis de ambiente
(e o arquivo .env, se houver), validando os valores e configurando o
logging estruturado.
"""

import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import structlog
from dotenv import load_dotenv

logger = structlog.get_logger(__name__)

BACKENDS = ("process", "celery")
OUTPUT_FORMATS = ("json", "csv", "text")
LOG_FORMATS = ("json", "console")


class ConfigurationError(Exception):
    """Exceção personalizada para erros de configuração."""

    pass


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw, 0)
    except ValueError as exc:
        raise ConfigurationError(f"{name} deve ser inteiro, recebido {raw!r}") from exc


@dataclass
class SearchConfig:
    """Profundidade da torre, amostragem e limite das tabelas."""

    m_max: int
    sample: int
    seed: int
    table_limit: int

    @classmethod
    def from_env(cls) -> "SearchConfig":
        """Cria instância a partir de variáveis de ambiente."""
        return cls(
            m_max=_env_int("GKG_M_MAX", 3),
            sample=_env_int("GKG_SAMPLE", 500),
            seed=_env_int("GKG_SEED", 0x6B6B),
            table_limit=_env_int("GKG_FIELD_TABLE_LIMIT", 1 << 22),
        )


@dataclass
class WorkerConfig:
    """Execução paralela da varredura."""

    jobs: int
    backend: str
    chunk_size: int

    @classmethod
    def from_env(cls) -> "WorkerConfig":
        """Cria instância a partir de variáveis de ambiente."""
        return cls(
            jobs=_env_int("GKG_JOBS", 1),
            backend=os.getenv("GKG_BACKEND", "process"),
            chunk_size=_env_int("GKG_CHUNK_SIZE", 64),
        )


@dataclass
class CeleryConfig:
    """Broker e backend de resultados do Celery."""

    broker_url: str
    result_backend: str
    eager: bool

    @classmethod
    def from_env(cls) -> "CeleryConfig":
        """Cria instância a partir de variáveis de ambiente."""
        return cls(
            broker_url=os.getenv("GKG_BROKER_URL", "memory://"),
            result_backend=os.getenv("GKG_RESULT_BACKEND", "cache+memory://"),
            eager=os.getenv("GKG_CELERY_EAGER", "true").lower() == "true",
        )


@dataclass
class OutputConfig:
    """Configurações de saída dos relatórios."""

    directory: str
    format: str

    @classmethod
    def from_env(cls) -> "OutputConfig":
        """Cria instância a partir de variáveis de ambiente."""
        return cls(
            directory=os.getenv("GKG_OUTPUT_DIRECTORY", "reports"),
            format=os.getenv("GKG_OUTPUT_FORMAT", "json"),
        )


@dataclass
class LogConfig:
    """Configurações de logging."""

    level: str
    format: str
    file: str

    @classmethod
    def from_env(cls) -> "LogConfig":
        """Cria instância a partir de variáveis de ambiente."""
        return cls(
            level=os.getenv("LOG_LEVEL", "INFO"),
            format=os.getenv("LOG_FORMAT", "console"),
            file=os.getenv("LOG_FILE", ""),
        )


class Config:
    """
    Classe principal de configuração.

    Carrega o ambiente, valida os valores e configura o structlog.
    """

    def __init__(self):
        """Inicializa configurações carregando variáveis de ambiente."""
        self._load_environment()
        self._validate_configuration()
        self._setup_logging()

    def _load_environment(self) -> None:
        """Carrega variáveis de ambiente do arquivo .env, se existir."""
        env_path = Path(__file__).parent.parent / ".env"
        if env_path.exists():
            load_dotenv(env_path)
        else:
            load_dotenv()

    def _validate_configuration(self) -> None:
        """Valida os valores lidos do ambiente."""
        search, workers, output, log = self.search, self.workers, self.output, self.log
        errors = []
        if search.m_max < 1:
            errors.append("GKG_M_MAX deve ser maior ou igual a 1")
        if search.sample < 0:
            errors.append("GKG_SAMPLE não pode ser negativo")
        if workers.jobs < 1:
            errors.append("GKG_JOBS deve ser maior ou igual a 1")
        if workers.chunk_size < 1:
            errors.append("GKG_CHUNK_SIZE deve ser maior ou igual a 1")
        if workers.backend not in BACKENDS:
            errors.append(f"GKG_BACKEND deve ser um de: {', '.join(BACKENDS)}")
        if output.format not in OUTPUT_FORMATS:
            errors.append(f"GKG_OUTPUT_FORMAT deve ser um de: {', '.join(OUTPUT_FORMATS)}")
        if log.format not in LOG_FORMATS:
            errors.append(f"LOG_FORMAT deve ser um de: {', '.join(LOG_FORMATS)}")
        if errors:
            raise ConfigurationError("; ".join(errors))

    def _setup_logging(self) -> None:
        """Configura structlog sobre o logging padrão."""
        log_config = self.log
        log_level = getattr(logging, log_config.level.upper(), logging.INFO)

        handlers: list = [logging.StreamHandler(sys.stderr)]
        if log_config.file:
            log_file = Path(log_config.file)
            log_file.parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))
        logging.basicConfig(level=log_level, format="%(message)s", handlers=handlers, force=True)

        renderer = (
            structlog.processors.JSONRenderer()
            if log_config.format == "json"
            else structlog.dev.ConsoleRenderer(colors=False)
        )
        structlog.configure(
            processors=[
                structlog.stdlib.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                renderer,
            ],
            wrapper_class=structlog.make_filtering_bound_logger(log_level),
            logger_factory=structlog.stdlib.LoggerFactory(),
            cache_logger_on_first_use=False,
        )

    @property
    def search(self) -> SearchConfig:
        """Retorna configurações de busca."""
        return SearchConfig.from_env()

    @property
    def workers(self) -> WorkerConfig:
        """Retorna configurações de execução."""
        return WorkerConfig.from_env()

    @property
    def celery(self) -> CeleryConfig:
        """Retorna configurações do Celery."""
        return CeleryConfig.from_env()

    @property
    def output(self) -> OutputConfig:
        """Retorna configurações de saída."""
        return OutputConfig.from_env()

    @property
    def log(self) -> LogConfig:
        """Retorna configurações de logging."""
        return LogConfig.from_env()

    def to_dict(self) -> Dict[str, Any]:
        """Converte configurações para dicionário."""
        return {
            "search": self.search.__dict__,
            "workers": self.workers.__dict__,
            "celery": self.celery.__dict__,
            "output": self.output.__dict__,
            "log": self.log.__dict__,
        }

    def __str__(self) -> str:
        return (
            f"Config(m_max={self.search.m_max}, jobs={self.workers.jobs}, "
            f"backend={self.workers.backend}, output_dir={self.output.directory})"
        )


_config: Optional[Config] = None


def get_config() -> Config:
    """Retorna a instância global de configuração, criada sob demanda."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config() -> None:
    """Descarta a instância global (usado nos testes)."""
    global _config
    _config = None
