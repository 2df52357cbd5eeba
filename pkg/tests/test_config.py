"""
Testes da configuração por variáveis de ambiente.
"""

import pytest

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.config import Config, ConfigurationError, get_config, reset_config
from gkgalois.errors import GKGaloisError


class TestConfig:
    """Testes para a classe Config."""

    def test_defaults(self, clean_env):
        """Testa valores padrão."""
        config = get_config()
        assert config.search.m_max == 3
        assert config.search.sample == 500
        assert config.search.seed == 0x6B6B
        assert config.search.table_limit == 1 << 22
        assert config.workers.jobs == 1
        assert config.workers.backend == "process"
        assert config.workers.chunk_size == 64
        assert config.celery.broker_url == "memory://"
        assert config.celery.eager is True
        assert config.output.directory == str(clean_env / "reports")
        assert config.output.format == "json"

    def test_integer_parsing(self, clean_env, monkeypatch):
        """Testa inteiros em decimal e hexadecimal."""
        monkeypatch.setenv("GKG_SEED", "0x10")
        monkeypatch.setenv("GKG_JOBS", "4")
        config = Config()
        assert config.search.seed == 16
        assert config.workers.jobs == 4

    def test_env_read_on_access(self, clean_env, monkeypatch):
        """Testa que as propriedades releem o ambiente."""
        config = get_config()
        monkeypatch.setenv("GKG_M_MAX", "2")
        assert config.search.m_max == 2

    def test_invalid_integer(self, clean_env, monkeypatch):
        """Testa inteiro inválido."""
        monkeypatch.setenv("GKG_JOBS", "muitos")
        with pytest.raises(ConfigurationError, match="GKG_JOBS deve ser inteiro"):
            Config()

    @pytest.mark.parametrize(
        "name,value,message",
        [
            ("GKG_BACKEND", "threads", "GKG_BACKEND"),
            ("GKG_OUTPUT_FORMAT", "xml", "GKG_OUTPUT_FORMAT"),
            ("LOG_FORMAT", "xml", "LOG_FORMAT"),
            ("GKG_M_MAX", "0", "GKG_M_MAX"),
            ("GKG_SAMPLE", "-1", "GKG_SAMPLE"),
            ("GKG_CHUNK_SIZE", "0", "GKG_CHUNK_SIZE"),
        ],
    )
    def test_invalid_values(self, clean_env, monkeypatch, name, value, message):
        """Testa validação dos valores lidos."""
        monkeypatch.setenv(name, value)
        with pytest.raises(ConfigurationError, match=message):
            Config()

    def test_configuration_error_is_not_domain_error(self):
        """Testa que erros de configuração não se confundem com erros do domínio."""
        assert not issubclass(ConfigurationError, GKGaloisError)

    def test_singleton_and_reset(self, clean_env):
        """Testa instância global e descarte."""
        first = get_config()
        assert get_config() is first
        reset_config()
        assert get_config() is not first

    def test_json_logging_and_file(self, clean_env, monkeypatch):
        """Testa logging em JSON com arquivo."""
        log_file = clean_env / "logs" / "gkgalois.log"
        monkeypatch.setenv("LOG_FORMAT", "json")
        monkeypatch.setenv("LOG_FILE", str(log_file))
        config = Config()
        assert config.log.format == "json"
        assert log_file.parent.exists()

    def test_to_dict(self, clean_env):
        """Testa conversão para dicionário."""
        data = get_config().to_dict()
        assert set(data) == {"search", "workers", "celery", "output", "log"}
        assert data["workers"]["backend"] == "process"
        assert "m_max=3" in str(get_config())


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
