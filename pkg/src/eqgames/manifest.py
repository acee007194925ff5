"""Run manifests attached to every CLI artifact."""
from __future__ import annotations

import datetime as _dt
import json
import os
import platform
from dataclasses import asdict, dataclass, field
from importlib import resources

import numpy as np

from . import __version__


def _now():
    # SOURCE_DATE_EPOCH pins timestamps so repeated runs are byte-identical
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        when = _dt.datetime.fromtimestamp(int(epoch), tz=_dt.timezone.utc)
    else:
        when = _dt.datetime.now(tz=_dt.timezone.utc)
    return when.isoformat(timespec="seconds")


def versions():
    return f"eqgames {__version__}; numpy {np.__version__}; python {platform.python_version()}"


@dataclass
class RunManifest:
    command: str
    parameters: dict
    seed: int | None = None
    versions: str = field(default_factory=versions)
    started: str = field(default_factory=_now)
    finished: str | None = None

    def finish(self):
        self.finished = _now()
        return self

    def as_dict(self):
        return asdict(self)

    def comment_lines(self):
        d = self.as_dict()
        return [f"# {key}: {json.dumps(d[key], sort_keys=True)}" for key in d]


def load_schema(name):
    """JSON schema shipped with the package, e.g. ``load_schema("simulate")``."""
    text = resources.files("eqgames").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)
