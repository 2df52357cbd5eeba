"""
Fixtures compartilhadas dos testes.

Curvas, grupos e contextos são caros de construir; ficam em escopo de sessão.
Os de q=3 só são usados por testes marcados com `slow`.
"""

import pytest

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from gkgalois.autgroup import build_catalog
from gkgalois.config import reset_config
from gkgalois.galois import get_context
from gkgalois.gkcurve import build_curve


@pytest.fixture(scope="session")
def curve2():
    return build_curve(2, m_max=3)


@pytest.fixture(scope="session")
def catalog2(curve2):
    return build_catalog(curve2)


@pytest.fixture(scope="session")
def ctx2():
    return get_context(2, m_max=3, sample=0)


@pytest.fixture(scope="session")
def curve3():
    return build_curve(3, m_max=2)


@pytest.fixture(scope="session")
def catalog3(curve3):
    return build_catalog(curve3)


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    """Ambiente sem variáveis GKG_* e com diretório de saída temporário."""
    for name in list(os.environ):
        if name.startswith("GKG_") or name.startswith("LOG_"):
            monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("GKG_OUTPUT_DIRECTORY", str(tmp_path / "reports"))
    monkeypatch.chdir(tmp_path)
    reset_config()
    yield tmp_path
    reset_config()
