import os
from pathlib import Path
from typing import Optional

import orjson
import pandas as pd
import structlog
from pydantic import BaseModel

from ..config import get_config

logger = structlog.get_logger(__name__)

EXTENSIONS = {"json": "json", "csv": "csv", "text": "txt"}


class ReportPipeline:
    """
    Pipeline para salvar relatórios no diretório de saída.

    Nomes de arquivo determinísticos (`<comando>_q<q>.<ext>`), sem data e hora,
    para que execuções repetidas produzam os mesmos bytes.
    """

    def __init__(self, output_dir: Optional[str] = None, fmt: Optional[str] = None):
        """Inicializa o pipeline com configurações."""
        config = get_config()
        self.output_dir = Path(output_dir or config.output.directory)
        self.format = fmt or config.output.format
        if self.format not in EXTENSIONS:
            raise ValueError(f"Formato deve ser um dos: {', '.join(EXTENSIONS)}")
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def filename(self, report: BaseModel) -> str:
        return f"{report.command}_q{report.q}.{EXTENSIONS[self.format]}"

    def render(self, report: BaseModel) -> bytes:
        """
        Serializa o relatório no formato configurado.

        Args:
            report: modelo com `command`, `q`, `rows()` e `summary_text()`

        Returns:
            Conteúdo do arquivo
        """
        if self.format == "json":
            data = report.model_dump(mode="json")
            return orjson.dumps(data, option=orjson.OPT_SORT_KEYS | orjson.OPT_INDENT_2) + b"\n"
        if self.format == "csv":
            frame = pd.json_normalize(report.rows())
            frame = frame.reindex(sorted(frame.columns), axis=1)
            return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")
        return (report.summary_text() + "\n").encode("utf-8")

    def save(self, report: BaseModel) -> Path:
        """Grava o relatório e devolve o caminho do arquivo."""
        filepath = self.output_dir / self.filename(report)
        tmp = filepath.with_suffix(filepath.suffix + ".tmp")
        tmp.write_bytes(self.render(report))
        os.replace(tmp, filepath)
        logger.info("relatório salvo", arquivo=str(filepath), formato=self.format)
        return filepath
