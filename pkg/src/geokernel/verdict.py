"""Three-valued verdicts with witness payloads.

A relation over constructive reals is in general only semi-decidable, so
every checker answers with one of ``HOLDS``, ``FAILS`` or ``UNKNOWN``.
``UNKNOWN`` means the fuel ran out; it is never silently coerced.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Iterable


class State(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WitnessIndex:
    """Index ``n`` at which ``x(n) > y(n) + 4`` was observed."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("witness index must be positive")


@dataclass(frozen=True)
class Verdict:
    state: State
    witness: Any = None

    @classmethod
    def holds(cls, witness: Any = None) -> "Verdict":
        return cls(State.HOLDS, witness)

    @classmethod
    def fails(cls, witness: Any = None) -> "Verdict":
        return cls(State.FAILS, witness)

    @classmethod
    def unknown(cls, witness: Any = None) -> "Verdict":
        return cls(State.UNKNOWN, witness)

    @classmethod
    def of_bool(cls, value: bool, witness: Any = None) -> "Verdict":
        return cls(State.HOLDS if value else State.FAILS, witness)

    @property
    def is_holds(self) -> bool:
        return self.state is State.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.state is State.FAILS

    @property
    def is_unknown(self) -> bool:
        return self.state is State.UNKNOWN

    def __bool__(self) -> bool:
        raise TypeError("Verdict has three values; test .is_holds / .is_fails explicitly")

    def __str__(self) -> str:
        return self.state.value.capitalize()


Thunk = Callable[[], Verdict]


def negate(v: Verdict) -> Verdict:
    """Kleene negation; the payload moves across unchanged.

    A refuted negative relation therefore carries the positive witness.
    """
    if v.is_holds:
        return Verdict.fails(v.witness)
    if v.is_fails:
        return Verdict.holds(v.witness)
    return v


def conj(parts: Iterable[tuple[str, Thunk]]) -> Verdict:
    """Short-circuiting Kleene conjunction over labelled thunks.

    Holds carries ``{label: witness}`` for every conjunct; Fails carries the
    first refuted conjunct only.
    """
    witnesses: dict[str, Any] = {}
    pending: dict[str, Any] = {}
    for label, thunk in parts:
        v = thunk()
        if v.is_fails:
            return Verdict.fails({label: v.witness})
        if v.is_unknown:
            pending[label] = v.witness
        witnesses[label] = v.witness
    if pending:
        return Verdict.unknown(pending)
    return Verdict.holds(witnesses)


def disj(parts: Iterable[tuple[str, Thunk]]) -> Verdict:
    """Short-circuiting Kleene disjunction; Holds carries the first true branch."""
    refutations: dict[str, Any] = {}
    unknown = False
    for label, thunk in parts:
        v = thunk()
        if v.is_holds:
            return Verdict.holds({label: v.witness})
        if v.is_unknown:
            unknown = True
        refutations[label] = v.witness
    if unknown:
        return Verdict.unknown(refutations)
    return Verdict.fails(refutations)
