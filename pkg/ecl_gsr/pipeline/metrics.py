"""Per-epoch training metrics."""

import csv
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from ecl_gsr.core.exceptions import ExportError

METRICS_FILE = "metrics.csv"
TIMING_FILE = "timing.csv"


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    disc_loss: float
    gen_loss: float
    reg_loss: float
    ecl_total: float
    class_loss: float
    total: float
    val_accuracy: float
    test_accuracy: float
    wall_time: float = 0.0

    def as_dict(self):
        return asdict(self)


# wall_time lives in its own file so metrics.csv is reproducible byte for byte.
METRIC_FIELDS = [f.name for f in fields(EpochRecord) if f.name != "wall_time"]


def _fmt(value):
    return str(value) if isinstance(value, int) else repr(float(value))


class MetricsLog:
    """Append-only list of EpochRecords with strictly increasing epochs."""

    def __init__(self):
        self.records = []

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def append(self, record):
        if self.records and record.epoch <= self.records[-1].epoch:
            raise ValueError(
                f"Epoch {record.epoch} does not follow epoch {self.records[-1].epoch}"
            )
        self.records.append(record)

    @property
    def last(self):
        return self.records[-1] if self.records else None

    def column(self, name):
        return [getattr(r, name) for r in self.records]

    def write_csv(self, path):
        """Write every field but wall time, one epoch per row."""
        rows = [[_fmt(getattr(r, name)) for name in METRIC_FIELDS] for r in self.records]
        return _write(path, METRIC_FIELDS, rows)

    def write_timing_csv(self, path):
        rows = [[str(r.epoch), f"{r.wall_time:.3f}"] for r in self.records]
        return _write(path, ["epoch", "wall_time"], rows)


def _write(path, header, rows):
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as e:
        raise ExportError(f"Could not write {path}: {e}") from e
    return path


def write_table(path, header, rows):
    """Write a CSV table with LF line endings."""
    return _write(path, header, [[_cell(v) for v in row] for row in rows])


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return "" if value is None else str(value)
