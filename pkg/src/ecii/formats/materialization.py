"""
Materialization dump::

    # ecii-mat v1
    # kb.sha256=<hex of the source knowledge base>
    # enrich=<n1>,<n2>,<cap>
    type <ind> <concept>        (sorted)
"""

import re
from dataclasses import dataclass

from ..core.exceptions import ConfigException
from ..models.materialization import Materialization

MAT_HEADER = "# ecii-mat v1"

_ROW = re.compile(r"^type\s+(?P<ind>\S+)\s+(?P<concept>\S+)$")


@dataclass(frozen=True)
class EnrichmentKey:
    n1: int
    n2: int
    cap: int

    def __str__(self) -> str:
        return f"{self.n1},{self.n2},{self.cap}"


@dataclass(frozen=True)
class MaterializationDump:
    kb_hash: str
    enrichment: EnrichmentKey | None
    memberships: tuple[tuple[str, str, int], ...]  # individual, concept, line


def dump_materialization(
    m: Materialization, kb_hash: str, enrichment: EnrichmentKey
) -> str:
    lines = [MAT_HEADER, f"# kb.sha256={kb_hash}", f"# enrich={enrichment}"]
    lines += [f"type {a} {c}" for a, c in m.memberships]
    return "".join(f"{line}\n" for line in lines)


def parse_materialization(text: str) -> MaterializationDump:
    """
    Read a dump; names are resolved later against the knowledge base.

    Raises:
        ConfigException: missing header or malformed lines
    """
    lines = text.splitlines()
    if not lines or lines[0].strip() != MAT_HEADER:
        raise ConfigException("not an ecii materialization dump (missing header)")
    kb_hash = ""
    enrichment: EnrichmentKey | None = None
    rows: list[tuple[str, str, int]] = []
    for number, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            if key == "kb.sha256":
                kb_hash = value
            elif key == "enrich":
                try:
                    n1, n2, cap = (int(part) for part in value.split(","))
                except ValueError:
                    raise ConfigException(
                        f"malformed enrich header {value!r}", number
                    ) from None
                enrichment = EnrichmentKey(n1, n2, cap)
            continue
        match = _ROW.match(line)
        if match is None:
            raise ConfigException(f"malformed materialization line {line!r}", number)
        rows.append((match.group("ind"), match.group("concept"), number))
    return MaterializationDump(kb_hash, enrichment, tuple(rows))
