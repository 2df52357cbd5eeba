"""
Módulo de pipelines do gkgalois.

Este módulo contém os pipelines de saída dos relatórios (JSON, CSV e texto).
"""

from .report_pipeline import ReportPipeline

__all__ = ["ReportPipeline"]
