"""Run configuration: resource caps, tolerances, seeds.

All exhaustive scans consult a cap from here and raise CapExceeded rather than
running unbounded.  Defaults are sized so the shipped verification suite
finishes in minutes on one core.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace


def _threads_from_env() -> int:
    raw = os.environ.get("GNORM_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class RunConfig:
    """Caps and tolerances shared by library operations and the CLI."""

    cap_edges: int = 32            # balanced-colouring enumeration
    cap_vertices: int = 64         # automorphism / isomorphism search
    cap_assignments: int = 1 << 24 # grid assignments in one density evaluation
    cap_cycles: int = 10_000_000   # simple-cycle enumeration
    cap_colourings: int = 24       # edges allowed in full 2^e colouring scans
    cap_hypergraph_vertices: int = 12
    cap_group: int = 1_000_000     # automorphism group size

    seed: int | None = None        # required by randomized searches
    trials: int = 10_000
    resolution: int = 2            # default kernel grid for falsifiers

    tol_falsify: float = 1e-9      # inequality slack before declaring violation
    tol_rel: float = 1e-12         # dual-path relative agreement
    tol_abs: float = 1e-12

    side_swap: bool = True         # allow automorphisms exchanging the sides
    threads: int = field(default_factory=_threads_from_env)

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)


DEFAULT = RunConfig()
