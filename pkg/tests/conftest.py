from pathlib import Path

import pytest

from src.ecii.formats.kb import parse_kb
from src.ecii.models.config import JobConfig
from src.ecii.models.examples import build_example_set
from src.ecii.services.extensions import compute_fill_sets
from src.ecii.services.materialize import MaterializationService

FAM_KB = """\
# a small family
concept Person
concept Male
concept Female
concept Parent
role hasChild
ind alice
ind bob
ind carol
ind dave
sub Male Person
sub Female Person
equiv Parent (some hasChild Person)
type alice Female
type bob Male
type carol Female
type dave Male
rel alice hasChild carol
rel bob hasChild dave
"""

FAM_CONFIG = """\
kb = fam.kb
positives = { alice }
negatives = { bob }
"""


@pytest.fixture
def fam_kb():
    """The family knowledge base."""
    return parse_kb(FAM_KB)


@pytest.fixture
def fam_examples(fam_kb):
    """P = {alice}, N = {bob}."""
    return build_example_set(fam_kb, {"alice"}, {"bob"})


@pytest.fixture
def fam_materialization(fam_kb, fam_examples):
    """Materialization of the unenriched family KB over the examples."""
    return MaterializationService().materialize(fam_kb, fam_examples.individuals)


@pytest.fixture
def fam_fills(fam_examples):
    return compute_fill_sets(fam_examples)


@pytest.fixture
def fam_config():
    """Default parameters with a small enrichment."""
    return JobConfig(kb="fam.kb", positives={"alice"}, negatives={"bob"}, n1=1, n2=1)


@pytest.fixture
def fam_files(tmp_path) -> Path:
    """Writes fam.kb and fam.conf into a temporary directory; returns the config."""
    (tmp_path / "fam.kb").write_text(FAM_KB, encoding="utf-8")
    config = tmp_path / "fam.conf"
    config.write_text(FAM_CONFIG, encoding="utf-8")
    return config
