"""CSV and JSON emission of result tables and reports."""

import json
import subprocess
from importlib import metadata
from pathlib import Path
from typing import Optional

import pandas as pd
from pydantic import BaseModel

from src.models.schema.check_schema import VerificationReport
from src.models.schema.sweep_schema import CSV_COLUMNS, BeampatternTable, ResultTable

PACKAGE_NAME = "isac-eavesdrop"
PACKAGE_VERSION = "0.1.0"


def version_string() -> str:
    """``git describe`` of the working tree, or the package version."""
    try:
        described = subprocess.run(
            ["git", "describe", "--tags", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=5,
            check=True,
        ).stdout.strip()
        if described:
            return described
    except (OSError, subprocess.SubprocessError):
        pass
    try:
        return metadata.version(PACKAGE_NAME)
    except metadata.PackageNotFoundError:
        return f"v{PACKAGE_VERSION}"


def to_frame(model: BaseModel) -> pd.DataFrame:
    """Tabular view of a result model, one row per record."""
    if isinstance(model, ResultTable):
        rows = [row.model_dump() for row in model.rows]
        return pd.DataFrame(rows, columns=list(CSV_COLUMNS))
    if isinstance(model, BeampatternTable):
        rows = [row.model_dump() for row in model.rows]
        return pd.DataFrame(rows, columns=["sin_theta", "gain_db"])
    if isinstance(model, VerificationReport):
        return pd.DataFrame([result.model_dump() for result in model.results])
    return pd.DataFrame([model.model_dump(mode="json")])


def render(model: BaseModel, fmt: str) -> str:
    """Serialize a result model as CSV or JSON text."""
    if fmt == "json":
        payload = model.model_dump(mode="json")
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown output format '{fmt}'")
    return to_frame(model).to_csv(
        index=False, float_format="%.10g", lineterminator="\n"
    )


def write_output(text: str, path: Optional[Path]) -> None:
    """Write ``text`` to ``path``, creating parent directories."""
    if path is None:
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
