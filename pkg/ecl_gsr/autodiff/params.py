"""Named parameter storage and checkpoints."""

import json
import struct
from pathlib import Path

import numpy as np
import structlog

from ecl_gsr.autodiff.tape import Value
from ecl_gsr.core.exceptions import ConfigurationError, ExportError, ShapeError

logger = structlog.get_logger(__name__)

# Checkpoint layout: little-endian u64 header length, UTF-8 JSON header
# {name: {"shape": [...], "offset": byte offset}}, then row-major float64 data.
_HEADER_LEN = struct.Struct("<Q")


def glorot(rng, fan_in, fan_out):
    """Uniform Glorot initialization."""
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=(fan_in, fan_out))


class ParamStore:
    """Trainable Values keyed by unique name, iterated in name order."""

    def __init__(self):
        self._params = {}

    def create(self, name, data):
        if name in self._params:
            raise ConfigurationError(f"Parameter {name!r} already exists")
        value = Value(np.array(data, dtype=np.float64, copy=True), requires_grad=True, name=name)
        self._params[name] = value
        return value

    def __getitem__(self, name):
        return self._params[name]

    def __contains__(self, name):
        return name in self._params

    def __len__(self):
        return len(self._params)

    def __iter__(self):
        return iter(self.names())

    def names(self):
        return sorted(self._params)

    def items(self):
        return [(name, self._params[name]) for name in self.names()]

    def values(self):
        return [self._params[name] for name in self.names()]

    @property
    def num_parameters(self):
        return int(sum(p.data.size for p in self._params.values()))

    def zero_grad(self):
        for p in self._params.values():
            p.grad = None

    def union(self, other):
        """A store holding the Values of both stores (shared, not copied)."""
        merged = ParamStore()
        for store in (self, other):
            for name, value in store.items():
                if name in merged:
                    raise ConfigurationError(f"Parameter {name!r} appears in both stores")
                merged._params[name] = value
        return merged

    def snapshot(self):
        return {name: p.data.copy() for name, p in self.items()}

    def load_snapshot(self, snapshot):
        missing = set(self._params) ^ set(snapshot)
        if missing:
            raise ShapeError(f"Snapshot parameter names differ: {sorted(missing)}")
        for name, p in self._params.items():
            data = np.asarray(snapshot[name], dtype=np.float64)
            if data.shape != p.shape:
                raise ShapeError(f"Parameter {name!r}: expected {p.shape}, got {data.shape}")
            p.data[...] = data

    def save(self, path):
        """Write all parameters to a checkpoint file."""
        header, offset = {}, 0
        for name, p in self.items():
            header[name] = {"shape": list(p.shape), "offset": offset}
            offset += p.data.size * 8
        blob = json.dumps(header, sort_keys=True).encode("utf-8")
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "wb") as f:
                f.write(_HEADER_LEN.pack(len(blob)))
                f.write(blob)
                for _, p in self.items():
                    f.write(np.ascontiguousarray(p.data, dtype="<f8").tobytes())
        except OSError as e:
            raise ExportError(f"Could not write checkpoint {path}: {e}") from e
        logger.info("Saved checkpoint", path=str(path), parameters=self.num_parameters)
        return path

    def load(self, path):
        """Overwrite parameter values from a checkpoint written by :meth:`save`."""
        self.load_snapshot(read_checkpoint(path))
        logger.info("Loaded checkpoint", path=str(path))


def read_checkpoint(path):
    """Checkpoint contents as ``{name: array}``."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER_LEN.size:
        raise ExportError(f"Checkpoint {path} is truncated")
    (length,) = _HEADER_LEN.unpack_from(raw)
    start = _HEADER_LEN.size + length
    try:
        header = json.loads(raw[_HEADER_LEN.size : start].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ExportError(f"Checkpoint {path} has a corrupt header: {e}") from e

    out = {}
    for name, entry in header.items():
        shape = tuple(entry["shape"])
        count = int(np.prod(shape)) if shape else 1
        begin = start + entry["offset"]
        end = begin + count * 8
        if end > len(raw):
            raise ExportError(f"Checkpoint {path} is truncated at parameter {name!r}")
        out[name] = np.frombuffer(raw[begin:end], dtype="<f8").reshape(shape).astype(np.float64)
    return out
