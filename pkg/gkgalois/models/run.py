"""
Parâmetros efetivos de uma execução.

Reúne os valores do ambiente e das flags da linha de comando; é embutido
em todo relatório (sem os campos que não alteram o resultado).
"""

from pydantic import BaseModel, ConfigDict, Field, field_validator

SUPPORTED_Q = (2, 3, 4, 5)
REPORT_FORMATS = ("json", "csv", "text")
BACKENDS = ("process", "celery")
NON_REPRODUCIBLE_FIELDS = {"jobs", "backend", "chunk_size", "output"}


class RunConfig(BaseModel):
    """Configuração de uma execução da CLI."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "q": 2,
                "m_max": 3,
                "jobs": 1,
                "sample": 500,
                "seed": 27499,
                "output": "reports",
                "format": "json",
            }
        },
    )

    q: int = Field(..., description="Parâmetro q da curva")
    m_max: int = Field(3, description="Profundidade das extensões F_q^(6m) nas buscas de fibra")
    jobs: int = Field(1, description="Número de processos")
    sample: int = Field(500, description="Retas sobre F_q⁶ sorteadas fora de F_q²")
    seed: int = Field(0x6B6B, description="Semente dos sorteios")
    output: str = Field("reports", description="Diretório dos relatórios")
    format: str = Field("json", description="Formato do relatório")
    backend: str = Field("process", description="Backend de execução da varredura")
    chunk_size: int = Field(64, description="Retas por lote")
    table_limit: int = Field(1 << 22, description="Maior corpo com tabelas completas")

    @field_validator("q")
    @classmethod
    def validate_q(cls, v: int) -> int:
        """Valida q suportado."""
        if v not in SUPPORTED_Q:
            raise ValueError(f"q deve ser um de: {', '.join(map(str, SUPPORTED_Q))}")
        return v

    @field_validator("m_max", "jobs", "chunk_size")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Valor deve ser maior ou igual a 1")
        return v

    @field_validator("sample")
    @classmethod
    def validate_sample(cls, v: int) -> int:
        if v < 0:
            raise ValueError("Amostra não pode ser negativa")
        return v

    @field_validator("format")
    @classmethod
    def validate_format(cls, v: str) -> str:
        """Valida formato do relatório."""
        if v not in REPORT_FORMATS:
            raise ValueError(f"Formato deve ser um dos: {', '.join(REPORT_FORMATS)}")
        return v

    @field_validator("backend")
    @classmethod
    def validate_backend(cls, v: str) -> str:
        if v not in BACKENDS:
            raise ValueError(f"Backend deve ser um dos: {', '.join(BACKENDS)}")
        return v

    def embedded(self) -> dict:
        """Cópia embutida nos relatórios, sem os campos de execução e destino."""
        return self.model_dump(exclude=NON_REPRODUCIBLE_FIELDS)
