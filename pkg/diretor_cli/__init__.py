"""
CLI do Diretor Inteligente
"""

__version__ = "0.1.0"

from .__main__ import app

__all__ = ["app"]
