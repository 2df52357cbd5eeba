"""
Modelos de dados (pydantic) dos relatórios do gkgalois.
"""

from .galois import (
    MODULO_GROUP,
    CensusReport,
    CensusSummary,
    ClassificationSummary,
    ClassificationTable,
    Contact,
    Evidence,
    GaloisVerdict,
    PlanePointVerdict,
    Verdict,
    Witness,
)
from .reports import (
    CurveReport,
    GroupReport,
    LemmaReport,
    LemmaResult,
    RamificationEntry,
    RHReport,
)
from .run import RunConfig

__all__ = [
    "MODULO_GROUP",
    "CensusReport",
    "CensusSummary",
    "ClassificationSummary",
    "ClassificationTable",
    "Contact",
    "CurveReport",
    "Evidence",
    "GaloisVerdict",
    "GroupReport",
    "LemmaReport",
    "LemmaResult",
    "PlanePointVerdict",
    "RamificationEntry",
    "RHReport",
    "RunConfig",
    "Verdict",
    "Witness",
]
