"""
Modelos dos veredictos de retas de Galois e do censo de pontos de Galois.
"""

from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, PrivateAttr, field_validator, model_validator

Coords = List[str]
MODULO_GROUP = "modulo generated group"


class Verdict(str, Enum):
    GALOIS = "GALOIS"
    NOT_GALOIS = "NOT_GALOIS"
    UNKNOWN = "UNKNOWN"


class Contact(BaseModel):
    """Ponto de ℓ ∩ X com sua multiplicidade de base."""

    point: Coords
    base: int = Field(..., ge=1)


class Witness(BaseModel):
    """Dois pontos da mesma fibra com índices de ramificação distintos."""

    plane: Coords
    points: List[Coords] = Field(..., min_length=2, max_length=2)
    e: List[int] = Field(..., min_length=2, max_length=2)
    field_degree: int

    @field_validator("e")
    @classmethod
    def validate_mismatch(cls, v: List[int]) -> List[int]:
        if v[0] == v[1]:
            raise ValueError("Testemunha exige índices de ramificação distintos")
        return v


class Evidence(BaseModel):
    kind: Literal["subgroup", "ramification", "exhaustion", "none"]
    elements: List[List[Coords]] = Field(default_factory=list, description="Matrizes do subgrupo")
    witness: Optional[Witness] = None
    note: str = ""


class GaloisVerdict(BaseModel):
    """Decisão sobre uma reta, com a evidência que a sustenta."""

    plucker: Coords
    span: List[Coords]
    rational: bool = Field(..., description="Reta racional sobre F_q²")
    degree: Optional[int] = None
    degree_bounds: List[int] = Field(..., min_length=2, max_length=2)
    contacts: List[Contact] = Field(default_factory=list)
    subgroup_order: int = Field(..., ge=1)
    verdict: Verdict
    conditional: bool = False
    predicate: bool = Field(..., description="Reta por R' ou contida em {Z=0}, sobre F_q²")
    evidence: Evidence

    _line = PrivateAttr(default=None)

    @model_validator(mode="after")
    def validate_evidence(self) -> "GaloisVerdict":
        """GALOIS exige |G_ℓ| = d; NOT_GALOIS exige testemunha ou marca condicional."""
        if self.verdict == Verdict.GALOIS and self.degree != self.subgroup_order:
            raise ValueError("Veredicto GALOIS exige ordem do subgrupo igual ao grau")
        if self.verdict == Verdict.NOT_GALOIS:
            if self.evidence.witness is None and not self.conditional:
                raise ValueError("Veredicto NOT_GALOIS sem testemunha nem marca condicional")
        return self

    @property
    def line(self):
        return self._line

    def with_line(self, line) -> "GaloisVerdict":
        self._line = line
        return self


class ClassificationSummary(BaseModel):
    galois_total: int
    by_degree: Dict[str, int]
    through_r_prime: int
    in_plane_z: int
    empty_through_r_prime: int
    unknown: int
    conditional: int
    witnessed: int
    non_galois_degrees: Dict[str, int]
    sample_galois: int
    mismatches: List[Coords] = Field(default_factory=list)
    checks: Dict[str, bool] = Field(default_factory=dict)


class ClassificationTable(BaseModel):
    """Veredictos de todas as retas sobre F_q² e da amostra sobre F_q⁶."""

    command: str = "sweep"
    q: int
    version: str
    config: dict
    lines: List[GaloisVerdict]
    sample: List[GaloisVerdict] = Field(default_factory=list)
    summary: ClassificationSummary

    def rows(self) -> List[dict]:
        rows = [dict(v.model_dump(mode="json"), stratum="rational") for v in self.lines]
        rows += [dict(v.model_dump(mode="json"), stratum="sample") for v in self.sample]
        return rows

    def summary_text(self) -> str:
        s = self.summary
        lines = [
            f"Varredura q={self.q}: {len(self.lines)} retas sobre F_q², {len(self.sample)} sorteadas",
            f"  retas de Galois: {s.galois_total} (por R': {s.through_r_prime}, em Z=0: {s.in_plane_z})",
            f"  por grau: {dict(sorted(s.by_degree.items()))}",
            f"  vazias por R': {s.empty_through_r_prime}",
            f"  NOT_GALOIS com testemunha: {s.witnessed}; condicionais: {s.conditional}",
            f"  UNKNOWN: {s.unknown}; divergências: {len(s.mismatches)}",
        ]
        lines += [f"  {name}: {'ok' if ok else 'FALHOU'}" for name, ok in sorted(s.checks.items())]
        return "\n".join(lines)


class PlanePointVerdict(BaseModel):
    """Ponto de P² classificado pela reta correspondente por R."""

    point: Coords
    line: Coords
    tag: Literal["inner", "outer", "singular"]
    degree: Optional[int] = None
    verdict: Verdict
    expected: bool = Field(..., description="Ponto pertence a {(0:1:0)} ∪ (X' ∩ {Z=0})")
    provenance: List[Coords] = Field(default_factory=list, description="Pontos hermitianos da secante")


class CensusSummary(BaseModel):
    galois_total: int
    inner_smooth: int
    outer: int
    singular: int
    mismatches: List[Coords] = Field(default_factory=list)
    checks: Dict[str, bool] = Field(default_factory=dict)


class CensusReport(BaseModel):
    command: str = "points"
    q: int
    version: str
    config: dict
    points: List[PlanePointVerdict]
    summary: CensusSummary

    def rows(self) -> List[dict]:
        return [p.model_dump(mode="json") for p in self.points]

    def summary_text(self) -> str:
        s = self.summary
        lines = [
            f"Censo de pontos de Galois de X' q={self.q}: {len(self.points)} pontos",
            f"  pontos de Galois: {s.galois_total}",
            f"  internos lisos: {s.inner_smooth}; externos: {s.outer}; singulares: {s.singular}",
            f"  divergências: {len(s.mismatches)}",
        ]
        lines += [f"  {name}: {'ok' if ok else 'FALHOU'}" for name, ok in sorted(s.checks.items())]
        return "\n".join(lines)
