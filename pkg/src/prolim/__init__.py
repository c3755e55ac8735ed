"""Exact computation with inverse systems of finitely generated abelian
groups: Smith-normal-form linear algebra, surjectivization, Mittag-Leffler
certificates, derived-limit verdicts, and topological classification of
the limit space."""

from prolim._backend import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
