"""Co-maximal graphs of finite commutative rings and exact checks of their
structural properties."""

from __future__ import annotations

__version__ = "0.1.0"

from .build import build_gamma, build_gamma_r, build_omega, decompose_omega
from .errors import CapExceeded, GuardExceeded, InconsistencyError, RingError
from .graph import Graph, export_graph, sequential_sum
from .ring import GF, ProductRing, RingSpec, Zn, make_ring, quotient_ring
from .theorems import CHECK_IDS, Verdict, run_all, run_check, survey

__all__ = [
    "CHECK_IDS",
    "CapExceeded",
    "GF",
    "Graph",
    "GuardExceeded",
    "InconsistencyError",
    "ProductRing",
    "RingError",
    "RingSpec",
    "Verdict",
    "Zn",
    "__version__",
    "build_gamma",
    "build_gamma_r",
    "build_omega",
    "decompose_omega",
    "export_graph",
    "sequential_sum",
    "make_ring",
    "quotient_ring",
    "run_all",
    "run_check",
    "survey",
]
