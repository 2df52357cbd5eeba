"""
Relatórios de curva, grupo, lemas e Riemann–Hurwitz.
"""

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field


class RamificationEntry(BaseModel):
    point: List[str]
    plane: List[str]
    ord: Union[int, str]
    base: int
    e: int = Field(..., ge=1)
    field_degree: int


class RHReport(BaseModel):
    """Riemann–Hurwitz manso para a projeção a partir de ℓ₀."""

    q: int
    line: List[str]
    genus: int
    degree: int
    records: List[RamificationEntry]
    sum_e_minus_1: int
    lhs: int = Field(..., description="2g − 2")
    rhs: int = Field(..., description="−2·d + Σ(e − 1)")
    complete: bool
    tame: bool
    holds: Optional[bool] = None
    notice: str = ""


class LemmaResult(BaseModel):
    name: str
    passed: bool
    detail: dict = Field(default_factory=dict)


class LemmaReport(BaseModel):
    command: str = "lemmas"
    q: int
    version: str
    config: dict
    results: List[LemmaResult]
    rh: Optional[RHReport] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def first_failure(self) -> Optional[str]:
        return next((r.name for r in self.results if not r.passed), None)

    def rows(self) -> List[dict]:
        return [r.model_dump(mode="json") for r in self.results]

    def summary_text(self) -> str:
        lines = [f"Lemas q={self.q}:"]
        lines += [f"  {'PASS' if r.passed else 'FAIL'} {r.name}" for r in self.results]
        return "\n".join(lines)


class GroupReport(BaseModel):
    command: str = "aut"
    q: int
    version: str
    config: dict
    parameters: Dict[str, str]
    generators: List[dict]
    orders: Dict[str, int]
    hermitian_orbits: List[int]
    doubly_transitive: bool
    g1_g2_trivial: bool
    faithful: bool
    expected_linear_order: int
    checks: Dict[str, bool] = Field(default_factory=dict)

    def rows(self) -> List[dict]:
        row = {f"order_{k}": v for k, v in self.orders.items()}
        row.update(
            q=self.q,
            doubly_transitive=self.doubly_transitive,
            g1_g2_trivial=self.g1_g2_trivial,
            faithful=self.faithful,
            orbits=" ".join(map(str, self.hermitian_orbits)),
        )
        row.update({f"check_{k}": v for k, v in self.checks.items()})
        return [row]

    def summary_text(self) -> str:
        o = self.orders
        lines = [
            f"Automorfismos q={self.q}",
            f"  |G1| = {o['G1']}, |G2| = {o['G2']}, |eta| = {o['eta']}, |G3| = {o['G3']}, |Aut| = {o['full']}",
            f"  órbitas na seção hermitiana: {self.hermitian_orbits}",
            f"  duplamente transitivo: {self.doubly_transitive}; fiel: {self.faithful}",
            f"  G1 ∩ G2 trivial: {self.g1_g2_trivial}",
            f"  ordem esperada do grupo linear: {self.expected_linear_order}",
        ]
        lines += [f"  {name}: {'ok' if ok else 'FALHOU'}" for name, ok in sorted(self.checks.items())]
        return "\n".join(lines)


class CurveReport(BaseModel):
    command: str = "curve"
    q: int
    version: str
    config: dict
    forms: Dict[str, str]
    named_points: Dict[str, List[str]]
    named_lines: Dict[str, dict]
    counts: Dict[str, int]
    hasse_weil: Dict[str, int]
    genus: int
    birationality: dict

    def rows(self) -> List[dict]:
        return [
            {"field": name, "count": n, "hasse_weil": self.hasse_weil.get(name)}
            for name, n in self.counts.items()
        ]

    def summary_text(self) -> str:
        lines = [f"Curva GK q={self.q}, gênero {self.genus}"]
        lines += [f"  {k} = {v}" for k, v in self.forms.items()]
        lines += [
            f"  #X({name}) = {n} (Hasse–Weil: {self.hasse_weil.get(name)})"
            for name, n in self.counts.items()
        ]
        return "\n".join(lines)
