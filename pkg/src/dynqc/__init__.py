"""Near-maximum quasi-clique maintenance under streaming edge updates."""

from .detect import DetectParams, detect
from .dmi import DMIEngine, EngineParams, QuasiClique, StaticRebuildEngine, clique_delete_edge
from .graph import DynamicGraph, InputError
from .kernels import COMPILED
from .nsf import NSFEngine
from .sketch import (
    BottomKSignature,
    BufferedSignature,
    HashScheme,
    estimate_containment,
    estimate_jaccard,
    exact_jaccard,
)

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "BottomKSignature",
    "BufferedSignature",
    "DMIEngine",
    "DetectParams",
    "DynamicGraph",
    "EngineParams",
    "HashScheme",
    "InputError",
    "NSFEngine",
    "QuasiClique",
    "StaticRebuildEngine",
    "clique_delete_edge",
    "detect",
    "estimate_containment",
    "estimate_jaccard",
    "exact_jaccard",
]
