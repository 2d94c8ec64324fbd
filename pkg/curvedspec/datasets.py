"""
Dataset emission and re-parsing
===============================

A Dataset is a table plus provenance. CSV carries the provenance as
'#'-prefixed header lines; JSON is one object {meta, columns, rows}.
Floats are written with 17 significant digits so re-parsing is bit-exact.
"""
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from curvedspec import config

logger = logging.getLogger(__name__)

FLOAT_FORMAT = f"%.{config.SIGNIFICANT_DIGITS}g"


@dataclass
class Dataset:
    name: str
    frame: pd.DataFrame
    meta: dict = field(default_factory=dict)

    @property
    def columns(self) -> list[str]:
        return [str(c) for c in self.frame.columns]

    def column(self, name: str) -> np.ndarray:
        return self.frame[name].to_numpy()

    def to_csv(self) -> str:
        buffer = io.StringIO()
        for key, value in self.header().items():
            buffer.write(f"# {key}: {_header_value(value)}\n")
        self.frame.to_csv(buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        return buffer.getvalue()

    def to_json(self) -> str:
        rows = [[_json_cell(v) for v in row] for row in self.frame.itertuples(index=False, name=None)]
        payload = {"meta": jsonable(self.header()), "columns": self.columns, "rows": rows}
        return json.dumps(payload, indent=2) + "\n"

    def header(self) -> dict:
        return {"dataset": self.name, "hbar_c_gev_fm": config.HBAR_C_GEV_FM, **self.meta}

    def render(self, output_format: str) -> str:
        return self.to_json() if output_format == "json" else self.to_csv()


def provenance(run_config: config.RunConfig, s_convention: str, normalization: str, **extra) -> dict:
    """Header fields shared by every emitted dataset."""
    return {
        "config_hash": run_config.config_hash(),
        "kappa_per_fm": run_config.kappa_per_fm,
        "R_fm": run_config.R_fm,
        "s_convention": s_convention,
        "normalization": normalization,
        **extra,
    }


def write_dataset(dataset: Dataset, output_format: str, out: Optional[str] = None) -> None:
    """Write to `out`, or to stdout when out is None or '-'."""
    text = dataset.render(output_format)
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    # newline="" keeps "\n" on every platform so repeated runs are byte-identical
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    logger.info("✅ Wrote %s (%d rows) to %s", dataset.name, len(dataset.frame), path)


def read_dataset(source: str | Path, output_format: Optional[str] = None) -> Dataset:
    """Parse a file written by write_dataset. Format follows the suffix unless given."""
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    output_format = output_format or ("json" if path.suffix.lower() == ".json" else "csv")
    return parse_dataset(text, output_format)


def parse_dataset(text: str, output_format: str) -> Dataset:
    if output_format == "json":
        payload = json.loads(text)
        meta = dict(payload["meta"])
        frame = pd.DataFrame(payload["rows"], columns=payload["columns"])
    else:
        lines = text.splitlines()
        header_lines = [line for line in lines if line.startswith("#")]
        meta = {}
        for line in header_lines:
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        frame = pd.read_csv(io.StringIO(text), skiprows=len(header_lines), float_precision="round_trip")
    name = str(meta.pop("dataset", ""))
    meta.pop("hbar_c_gev_fm", None)
    return Dataset(name=name, frame=frame, meta=meta)


def _header_value(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, (list, tuple, dict)):
        return json.dumps(jsonable(value), sort_keys=True)
    return str(value)


def _json_cell(value):
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def jsonable(value):
    """numpy scalars and arrays to plain Python for json.dumps."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value
