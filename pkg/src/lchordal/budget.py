"""Resource budgets for the exponential searches."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class BudgetExceeded(RuntimeError):
    """Raised when a search runs past its node, hole or time allowance."""

    def __init__(self, stage: str, detail: str = ""):
        self.stage = stage
        self.detail = detail
        super().__init__(f"budget exceeded in {stage}" + (f": {detail}" if detail else ""))


@dataclass
class Budget:
    max_nodes: int | None = 2_000_000
    max_holes: int | None = 100_000
    time_limit: float | None = None
    nodes: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self, stage: str, amount: int = 1) -> None:
        self.nodes += amount
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(stage, f"more than {self.max_nodes} search nodes")
        # checking the clock on every node is measurably slow
        if self.time_limit is not None and (self.nodes & 0x3FF) == 0:
            self.check_time(stage)

    def check_time(self, stage: str) -> None:
        if self.time_limit is not None and time.monotonic() - self.started > self.time_limit:
            raise BudgetExceeded(stage, f"time limit {self.time_limit}s")

    def usage(self) -> dict:
        return {
            "nodes": self.nodes,
            "max_nodes": self.max_nodes,
            "max_holes": self.max_holes,
            "time_limit": self.time_limit,
            "elapsed": round(time.monotonic() - self.started, 6),
        }


def unlimited() -> Budget:
    return Budget(max_nodes=None, max_holes=None, time_limit=None)
