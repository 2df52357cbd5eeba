"""
Backends de execução da varredura.
"""

from .pool import SweepExecutor

__all__ = ["SweepExecutor"]
