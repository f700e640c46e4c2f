"""Coarse geometry of trees of metric graphs."""

from ._coarsetree import *  # noqa: F401,F403
from ._coarsetree import (
    REPORT_SCHEMA_VERSION,
    SCENE_SCHEMA_VERSION,
    MetricGraph,
    OverflowError,
    PreconditionError,
    Scene,
    StructuralError,
    load_scene,
    run_command,
)

FIBONACCI = (["ab", "a"], ["b", "Ba"])

__version__ = "0.1.0"
