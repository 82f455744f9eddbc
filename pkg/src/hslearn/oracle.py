"""Round-structured membership oracle over a hidden halfspace.

Queries are submitted in whole batches (rounds). A learner that submits two
batches is, structurally, a two-round algorithm: nothing it learns from the
answers of a batch can change that batch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .assignment import Assignment
from .errors import InvariantViolation, RoundLimitExceeded
from .halfspace import Halfspace, evaluate_masks


@dataclass
class QueryTranscript:
    rounds: list[tuple[tuple[Assignment, ...], tuple[int, ...]]] = field(default_factory=list)
    answer_index: dict[Assignment, int] = field(default_factory=dict)
    total_queries: int = 0

    def record(self, batch: tuple[Assignment, ...], answers: tuple[int, ...]) -> None:
        for a, f in zip(batch, answers):
            if self.answer_index.setdefault(a, f) != f:
                raise InvariantViolation(f"oracle answered {a} inconsistently")
        self.rounds.append((batch, answers))
        self.total_queries += len(batch)

    def to_dict(self) -> dict:
        return {"rounds": [[{"a": str(a), "f": f} for a, f in zip(batch, ans)]
                           for batch, ans in self.rounds]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class SimulatedOracle:
    """Membership oracle answering with a known target halfspace."""

    def __init__(self, target: Halfspace, round_limit: Optional[int] = None):
        if not target.in_hs_t():
            raise ValueError(f"target {target} has negative weights")
        if round_limit is not None and round_limit < 0:
            raise ValueError("round limit must be nonnegative")
        self._target = target
        self.round_limit = round_limit
        self.transcript = QueryTranscript()

    @property
    def n(self) -> int:
        return self._target.n

    def submit_round(self, batch: Iterable[Assignment]) -> list[int]:
        """Answer a batch; answers follow the batch sorted lexicographically."""
        if self.round_limit is not None and len(self.transcript.rounds) >= self.round_limit:
            raise RoundLimitExceeded(f"round limit {self.round_limit} reached")
        ordered = tuple(sorted(batch))
        if any(a.n != self.n for a in ordered):
            raise ValueError("batch contains assignments of the wrong dimension")
        masks = np.fromiter((a.mask for a in ordered), dtype=np.int64, count=len(ordered))
        answers = tuple(int(f) for f in evaluate_masks(self._target, masks))
        self.transcript.record(ordered, answers)
        return list(answers)

    def stats(self) -> dict:
        sizes = [len(batch) for batch, _ in self.transcript.rounds]
        return {"rounds": len(sizes), "per_round": sizes, "total": self.transcript.total_queries}


def new_simulated(target: Halfspace, round_limit: Optional[int] = None) -> SimulatedOracle:
    return SimulatedOracle(target, round_limit)
