"""Execution state objects: snapshots, counters, traces, and the state table.

A :class:`Snapshot` is the complete shared state of a two-thread run:
variable values, the output string, the semaphore bank, and both thread
statuses.  A :class:`PartialInterleaving` pairs a snapshot with the
execution trace that produced it and the combined execution counter
(per-thread statements executed, plus one).

The :class:`StateTable` is keyed on combined counters.  The first
interleaving to reach a counter is stored; later arrivals are compared
against it.  An equal snapshot means the subtree below was already
explored from an identical state (prunable); a differing snapshot is a
race: two schedules reached the same program point with different
observable behavior.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import NamedTuple

__all__ = [
    "BlockedOnSem",
    "CombinedCounter",
    "DIGEST_ALGORITHM",
    "DigestEntry",
    "Done",
    "DONE",
    "FirstVisit",
    "PartialInterleaving",
    "PrunedEqual",
    "Race",
    "Runnable",
    "Snapshot",
    "StateTable",
    "ThreadStatus",
    "digest",
    "snapshot_equal",
]

DIGEST_ALGORITHM = "blake2b-128"


# ---------------------------------------------------------------------------
# Thread status
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Runnable:
    next_index: int  # index of the next statement to execute


@dataclass(frozen=True)
class BlockedOnSem:
    sem: int


@dataclass(frozen=True)
class Done:
    pass


DONE = Done()

ThreadStatus = Runnable | BlockedOnSem | Done


def _status_key(status: ThreadStatus) -> str:
    match status:
        case Runnable(next_index):
            return f"run@{next_index}"
        case BlockedOnSem(sem):
            return f"blocked@{sem}"
        case Done():
            return "done"
    raise TypeError(f"not a thread status: {status!r}")


# ---------------------------------------------------------------------------
# Counters, traces, snapshots
# ---------------------------------------------------------------------------


class CombinedCounter(NamedTuple):
    """Per-thread execution counters: statements executed plus one."""

    s0: int
    s1: int


def _escape(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")


@dataclass(frozen=True)
class Snapshot:
    """Complete execution state; equality is field-wise and total."""

    variables: tuple[tuple[str, int], ...]  # sorted by name
    output: str
    semaphores: tuple[bool, ...]  # True = up
    status0: ThreadStatus
    status1: ThreadStatus

    def variable(self, name: str) -> int:
        for key, value in self.variables:
            if key == name:
                return value
        raise KeyError(name)

    def with_variable(self, name: str, value: int) -> "Snapshot":
        new_vars = tuple(
            (key, value if key == name else old) for key, old in self.variables
        )
        if all(key != name for key, _ in self.variables):
            raise KeyError(name)
        return Snapshot(new_vars, self.output, self.semaphores, self.status0, self.status1)

    def status(self, tid: int) -> ThreadStatus:
        return self.status0 if tid == 0 else self.status1

    def with_status(self, tid: int, status: ThreadStatus) -> "Snapshot":
        if tid == 0:
            return Snapshot(self.variables, self.output, self.semaphores, status, self.status1)
        return Snapshot(self.variables, self.output, self.semaphores, self.status0, status)

    def canonical(self) -> str:
        """Canonical serialization; the byte layout behind digests.

        Format: ``vars{name=value,...};out="...";sems=UD...;st0=...;st1=...``
        with variables in sorted name order, semaphores rendered as ``U``
        (up) / ``D`` (down), statuses as ``run@<index>``, ``blocked@<sem>``
        or ``done``, and the output string with ``\\``-escaped ``"``,
        ``\\``, and control characters.
        """
        vars_part = ",".join(f"{k}={v}" for k, v in sorted(self.variables))
        sems_part = "".join("U" if up else "D" for up in self.semaphores)
        return (
            f"vars{{{vars_part}}};"
            f'out="{_escape(self.output)}";'
            f"sems={sems_part};"
            f"st0={_status_key(self.status0)};"
            f"st1={_status_key(self.status1)}"
        )


def snapshot_equal(a: Snapshot, b: Snapshot) -> bool:
    """Field-wise snapshot equality; the relation behind race detection.

    Both snapshots must come from the same program: mismatched variable
    names or semaphore counts raise ``ValueError``.
    """
    if tuple(k for k, _ in a.variables) != tuple(k for k, _ in b.variables):
        raise ValueError("snapshots have different variable schemas")
    if len(a.semaphores) != len(b.semaphores):
        raise ValueError("snapshots have different semaphore counts")
    return a == b


def digest(snapshot: Snapshot) -> bytes:
    """128-bit digest of the canonical serialization (blake2b-128).

    Deterministic across runs and platforms.
    """
    return hashlib.blake2b(snapshot.canonical().encode("utf-8"), digest_size=16).digest()


@dataclass(frozen=True)
class PartialInterleaving:
    """A point in an exploration: state, how it was reached, and where."""

    snapshot: Snapshot
    trace: str  # over {"0", "1"}; trace[k] is the thread of the (k+1)-th statement
    counter: CombinedCounter

    def trace_consistent(self) -> bool:
        return (
            self.trace.count("0") == self.counter.s0 - 1
            and self.trace.count("1") == self.counter.s1 - 1
        )


# ---------------------------------------------------------------------------
# State table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DigestEntry:
    """Digest-mode stored record: snapshot digest plus witness trace."""

    digest: bytes
    trace: str


@dataclass(frozen=True)
class FirstVisit:
    pass


@dataclass(frozen=True)
class PrunedEqual:
    pass


@dataclass(frozen=True)
class Race:
    """Same combined counter reached with a different snapshot."""

    stored: PartialInterleaving | DigestEntry
    current: PartialInterleaving


VisitOutcome = FirstVisit | PrunedEqual | Race

_FIRST_VISIT = FirstVisit()
_PRUNED_EQUAL = PrunedEqual()


class StateTable:
    """Map from combined counter to the first interleaving seen there.

    Entries are never evicted or overwritten.  In digest mode only a
    128-bit snapshot digest and the trace are kept per entry.
    """

    def __init__(self, digest_mode: bool = False):
        self.digest_mode = digest_mode
        self._entries: dict[CombinedCounter, PartialInterleaving | DigestEntry] = {}

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, counter: CombinedCounter) -> bool:
        return counter in self._entries

    def stored(self, counter: CombinedCounter) -> PartialInterleaving | DigestEntry:
        return self._entries[counter]

    def visit(self, interleaving: PartialInterleaving) -> VisitOutcome:
        """Record a first visit, or compare against the stored one.

        Returns ``FirstVisit`` (entry stored), ``PrunedEqual`` (stored
        snapshot identical; table unchanged), or ``Race`` (snapshots
        differ; table unchanged).
        """
        counter = interleaving.counter
        entry = self._entries.get(counter)
        if entry is None:
            if self.digest_mode:
                self._entries[counter] = DigestEntry(
                    digest(interleaving.snapshot), interleaving.trace
                )
            else:
                self._entries[counter] = interleaving
            return _FIRST_VISIT
        if self.digest_mode:
            assert isinstance(entry, DigestEntry)
            if entry.digest == digest(interleaving.snapshot):
                return _PRUNED_EQUAL
            return Race(entry, interleaving)
        assert isinstance(entry, PartialInterleaving)
        if snapshot_equal(entry.snapshot, interleaving.snapshot):
            return _PRUNED_EQUAL
        return Race(entry, interleaving)
