import logging
from pathlib import Path
from typing import Callable, Generic, TypeVar

from ..core.exceptions import ConfigException

logger = logging.getLogger(__name__)

ModelType = TypeVar("ModelType")


class FileRepository(Generic[ModelType]):
    """Reads and writes one kind of artifact as UTF-8 text files."""

    def __init__(
        self,
        kind: str,
        parse: Callable[[str], ModelType],
        render: Callable[[ModelType], str] | None = None,
    ):
        self.kind = kind
        self._parse = parse
        self._render = render

    def read_text(self, path: Path) -> str:
        """Raw file contents; a missing or unreadable file is a config error."""
        try:
            return path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise ConfigException(f"{self.kind} file not found: {path}") from None
        except (OSError, UnicodeDecodeError) as exc:
            raise ConfigException(f"cannot read {self.kind} file {path}: {exc}") from exc

    def get(self, path: Path) -> ModelType:
        """Load and parse one artifact."""
        return self._parse(self.read_text(path))

    def write_text(self, path: Path, text: str) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8", newline="\n")
        except OSError as exc:
            raise ConfigException(f"cannot write {self.kind} file {path}: {exc}") from exc
        logger.debug("wrote %s file %s", self.kind, path)
        return path

    def save(self, path: Path, obj: ModelType) -> Path:
        if self._render is None:
            raise NotImplementedError(f"{self.kind} files are read-only")
        return self.write_text(path, self._render(obj))
