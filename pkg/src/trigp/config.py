"""Workspace configuration shared by the CLI, suites, and scripts."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .modules import SearchConfig

WORKSPACE_ENV = "TRIGP_WORKSPACE"


@dataclass
class WorkspaceConfig:
    p: Optional[int] = None  # field characteristic; None means "take it from the inputs"
    bound: int = 8
    trials: int = 200
    cap: int = 1 << 20
    ext_cap: int = 1 << 10
    seed: int = 0
    out_dir: Path = field(default_factory=lambda: Path(os.environ.get(WORKSPACE_ENV, "trigp-out")))

    def __post_init__(self):
        if self.bound < 1:
            raise ValueError("bound must be at least 1")
        if self.trials < 0 or self.cap < 1 or self.ext_cap < 1:
            raise ValueError("trials must be non-negative and caps positive")
        self.out_dir = Path(self.out_dir)

    @property
    def search(self) -> SearchConfig:
        return SearchConfig(seed=self.seed, trials=self.trials, cap=self.cap)

    def census_config(self):
        from .classify import CensusConfig

        return CensusConfig(bound=self.bound, ext_cap=self.ext_cap, search=self.search)

    def stamp(self) -> str:
        return f"[bound={self.bound} seed={self.seed}]"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["out_dir"] = str(self.out_dir)
        return d
