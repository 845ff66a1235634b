"""Verification reports and the exception taxonomy shared by all modules.

Verifiers never raise on a *failed check*: they return a report carrying the
two condition flags, the first counterexample found, and total violation
counts.  Exceptions are reserved for malformed inputs (``StructureError``),
violated operation preconditions (``PreconditionError``), and enumeration
guards (``CeilingError``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any


class StructureError(ValueError):
    """Input object is malformed (distinct from a failed verification)."""


class PreconditionError(ValueError):
    """An operation was invoked on input that violates its precondition."""


class CeilingError(RuntimeError):
    """An enumeration would exceed its configured size ceiling."""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a two-condition verification.

    ``passed`` is always ``condition_i and condition_ii``.  ``witness`` holds
    the first counterexample found when some condition fails, ``violations``
    the total number of failures counted, and ``checked_exhaustively`` is
    False only when a sampling budget was used instead of full enumeration.
    """

    passed: bool
    condition_i: bool
    condition_ii: bool
    witness: Any = None
    checked_exhaustively: bool = True
    violations: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (self.condition_i and self.condition_ii):
            raise StructureError("passed must equal condition_i and condition_ii")


def make_report(condition_i: bool, condition_ii: bool, witness=None,
                checked_exhaustively: bool = True, violations: int = 0,
                details: dict | None = None) -> VerificationReport:
    return VerificationReport(
        passed=condition_i and condition_ii,
        condition_i=condition_i,
        condition_ii=condition_ii,
        witness=witness,
        checked_exhaustively=checked_exhaustively,
        violations=violations,
        details=details if details is not None else {},
    )


def ceiling(name: str, default: int) -> int:
    """Resolve a size ceiling, allowing an ``ARMCODES_<NAME>`` env override."""
    raw = os.environ.get(f"ARMCODES_{name}")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise StructureError(f"ARMCODES_{name} must be an integer, got {raw!r}")
