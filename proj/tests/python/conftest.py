import json
import os
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def schema_dir():
    return Path(os.environ.get("FAIRAUDIT_SCHEMA_DIR", ROOT / "schema"))


@pytest.fixture(scope="session")
def metrics_schema(schema_dir):
    return json.loads((schema_dir / "metrics.schema.json").read_text())


@pytest.fixture(scope="session")
def plot_schema(schema_dir):
    return json.loads((schema_dir / "plot_document.schema.json").read_text())


@pytest.fixture(scope="session")
def compas_csv():
    return ROOT / "data" / "compas.csv"
