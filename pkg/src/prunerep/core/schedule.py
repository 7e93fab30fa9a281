"""Exploration probability schedules."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from prunerep.errors import DomainError

_KINDS = ("constant", "inverse-sqrt", "custom")


def _check_prob(p: float, where: str) -> float:
    p = float(p)
    if not (0.0 < p <= 1.0) or math.isnan(p):
        raise DomainError(f"{where} must lie in (0, 1], got {p}")
    return p


@dataclass(frozen=True)
class Schedule:
    """Per-round exploration probabilities p_1, p_2, ...

    Three kinds: a constant p, the inverse square-root decay
    p_i = 1/sqrt(i) (p_1 is exactly 1), and an explicit sequence of
    values. Custom values are range-checked at construction but their
    length is only checked against the horizon at run time.
    """

    kind: str
    p: Optional[float] = None
    values: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "constant":
            if self.p is None:
                raise DomainError("constant schedule needs p")
            object.__setattr__(self, "p", _check_prob(self.p, "constant p"))
        elif self.kind == "custom":
            if not self.values:
                raise DomainError("custom schedule needs at least one value")
            vals = tuple(_check_prob(v, "custom schedule entry") for v in self.values)
            object.__setattr__(self, "values", vals)

    @classmethod
    def constant(cls, p: float) -> "Schedule":
        return cls("constant", p=p)

    @classmethod
    def inverse_sqrt(cls) -> "Schedule":
        return cls("inverse-sqrt")

    @classmethod
    def custom(cls, values) -> "Schedule":
        return cls("custom", values=tuple(values))

    def probability(self, round_index: int) -> float:
        """p_i for a 1-based round index."""
        if round_index < 1:
            raise DomainError(f"round index is 1-based, got {round_index}")
        if self.kind == "constant":
            return self.p
        if self.kind == "inverse-sqrt":
            return 1.0 / math.sqrt(round_index)
        if round_index > len(self.values):
            raise DomainError(
                f"custom schedule has {len(self.values)} entries, "
                f"round {round_index} requested"
            )
        return self.values[round_index - 1]

    def prob_sum(self, horizon: int) -> float:
        """Sum of p_i over i = 1..horizon."""
        if horizon < 1:
            raise DomainError(f"horizon must be >= 1, got {horizon}")
        return sum(self.probability(i) for i in range(1, horizon + 1))

    def min_probability(self, horizon: int) -> float:
        if horizon < 1:
            raise DomainError(f"horizon must be >= 1, got {horizon}")
        return min(self.probability(i) for i in range(1, horizon + 1))

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "constant":
            out["p"] = self.p
        elif self.kind == "custom":
            out["values"] = list(self.values)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Schedule":
        kind = data.get("kind")
        if kind == "constant":
            return cls.constant(data["p"])
        if kind == "inverse-sqrt":
            return cls.inverse_sqrt()
        if kind == "custom":
            return cls.custom(data["values"])
        raise DomainError(f"unknown schedule kind {kind!r}")

    @classmethod
    def parse(cls, text: str) -> "Schedule":
        """Parse a CLI spelling: ``invsqrt``, ``const:0.5``, ``custom:1,0.5``."""
        text = text.strip().lower()
        if text in ("invsqrt", "inverse-sqrt", "1/sqrt"):
            return cls.inverse_sqrt()
        try:
            if text.startswith(("const:", "constant:")):
                return cls.constant(float(text.split(":", 1)[1]))
            if text.startswith("custom:"):
                parts = text.split(":", 1)[1].split(",")
                return cls.custom(float(v) for v in parts if v.strip())
        except ValueError as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"cannot parse schedule spec {text!r}") from exc
        raise DomainError(f"cannot parse schedule spec {text!r}")

    def label(self) -> str:
        if self.kind == "constant":
            return f"const:{self.p:g}"
        if self.kind == "inverse-sqrt":
            return "invsqrt"
        return "custom:" + ",".join(f"{v:g}" for v in self.values)
