from .artifacts import (
    ConfigRepository,
    KnowledgeBaseRepository,
    MaterializationRepository,
    ResultsRepository,
)
from .base import FileRepository

__all__ = [
    "ConfigRepository",
    "FileRepository",
    "KnowledgeBaseRepository",
    "MaterializationRepository",
    "ResultsRepository",
]
