"""Capacity limits and the error types shared across modules."""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Limits:
    max_dim: int = 12
    max_degree: int = 6
    max_arity: int = 4
    max_grid_points: int = 200_000


DEFAULT_LIMITS = Limits()


class LieIdealError(Exception):
    """Base class. ``witness`` carries structured data for reports."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class CapacityError(LieIdealError):
    def __init__(self, cap: str, value, limit):
        super().__init__(f"capacity exceeded: {cap}={value} > {limit}",
                         {"cap": cap, "value": value, "limit": limit})
        self.cap = cap


class ContractViolation(LieIdealError):
    pass


class MembershipError(ContractViolation):
    pass


class TransversalityError(ContractViolation):
    pass


class ChartOverlapError(ContractViolation):
    pass


def check_cap(cap: str, value: int, limits: Limits = DEFAULT_LIMITS):
    limit = getattr(limits, cap)
    if value > limit:
        raise CapacityError(cap, value, limit)
