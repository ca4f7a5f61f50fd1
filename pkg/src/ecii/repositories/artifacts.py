from pathlib import Path

from ..core.config import EngineSettings, settings
from ..formats.config import parse_config
from ..formats.kb import parse_kb, serialize_kb
from ..formats.materialization import MaterializationDump, parse_materialization
from ..formats.report import parse_report, render_report
from ..models.config import JobConfig
from ..models.knowledge_base import KnowledgeBase
from ..models.report import ResultReport
from .base import FileRepository


class KnowledgeBaseRepository(FileRepository[KnowledgeBase]):
    def __init__(self) -> None:
        super().__init__("knowledge base", parse_kb, serialize_kb)


class ConfigRepository(FileRepository[JobConfig]):
    """Job configs; relative ``kb`` paths resolve against the config's directory."""

    def __init__(self, app_settings: EngineSettings = settings) -> None:
        super().__init__("config", parse_config)
        self.default_cap = app_settings.ECII_EXPRESSION_CAP

    def get(self, path: Path) -> JobConfig:
        return parse_config(
            self.read_text(path), base_dir=path.parent, default_cap=self.default_cap
        )


class ResultsRepository(FileRepository[ResultReport]):
    def __init__(self) -> None:
        super().__init__("results", parse_report, render_report)


class MaterializationRepository(FileRepository[MaterializationDump]):
    def __init__(self) -> None:
        super().__init__("materialization", parse_materialization)
