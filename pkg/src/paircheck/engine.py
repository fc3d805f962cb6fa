"""Depth-first exploration of all interleavings of a two-thread program.

The search branches wherever both threads could execute a statement,
always exploring thread 0's step first.  Once one thread has finished,
the other runs straight to completion.  With race detection on, every
state reached by an executed statement is checked against the state
table; an equal stored snapshot lets pruning cut the subtree (it was
already explored from an identical state), and a differing one is
reported as a race.

Semaphores follow deliberately nonstandard semantics: ``down(i)`` lowers
a raised semaphore and otherwise does nothing; ``up(i)`` raises a lowered
semaphore and *blocks* while it is already raised.  A thread whose next
statement would block is simply not schedulable, so every explored state
is reproducible by replaying its trace: there are no hidden scheduling
events.  If both live threads stand before blocking ``up`` calls, that
state is a deadlock; if the sole remaining live thread does, it would
block forever.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace

from .state import (
    DONE,
    BlockedOnSem,
    CombinedCounter,
    DigestEntry,
    Done,
    FirstVisit,
    PartialInterleaving,
    PrunedEqual,
    Race,
    Runnable,
    Snapshot,
    StateTable,
)
from .toylang import Assign, Emit, ProgramPair, SemDown, SemUp, eval_expr

__all__ = [
    "Advanced",
    "BudgetExceeded",
    "CompletedThread",
    "Deadlock",
    "EngineError",
    "ExplorationConfig",
    "ExplorationReport",
    "ExplorationStats",
    "Finding",
    "NowBlocked",
    "Outcome",
    "RaceRecord",
    "ReplayError",
    "StepEffect",
    "explore",
    "initial_interleaving",
    "replay",
    "step",
    "unblock_check",
]


class EngineError(Exception):
    """Misuse of the stepping API (e.g. stepping a finished thread)."""


class ReplayError(EngineError):
    """A trace references a thread that cannot execute at that point."""

    def __init__(self, message: str, position: int):
        super().__init__(f"position {position}: {message}")
        self.position = position


class BudgetExceeded(Exception):
    """The exploration hit its total statement budget."""


# ---------------------------------------------------------------------------
# Step effects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Advanced:
    pass


@dataclass(frozen=True)
class NowBlocked:
    sem: int


@dataclass(frozen=True)
class Deadlock:
    pass


@dataclass(frozen=True)
class CompletedThread:
    pass


StepEffect = Advanced | NowBlocked | Deadlock | CompletedThread

_ADVANCED = Advanced()
_DEADLOCK = Deadlock()
_COMPLETED = CompletedThread()


# ---------------------------------------------------------------------------
# Configuration, statistics, report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExplorationConfig:
    pruning: bool = True
    race_detection: bool = True
    digest_mode: bool = False
    max_total_steps: int = 1_000_000

    def __post_init__(self) -> None:
        if self.digest_mode and not self.race_detection:
            raise ValueError("digest_mode requires race_detection (the table must exist)")
        if self.max_total_steps < 0:
            raise ValueError("max_total_steps must be non-negative")


@dataclass
class ExplorationStats:
    branch_statements: int = 0  # executed where both threads were live and unblocked
    completion_statements: int = 0  # executed while exactly one thread was live
    complete_interleavings: int = 0
    pruned_subtrees: int = 0
    races_found: int = 0
    table_entries: int = 0


@dataclass(frozen=True)
class Finding:
    """A deadlock or block-forever point: counter plus witness trace."""

    counter: CombinedCounter
    trace: str


@dataclass(frozen=True)
class Outcome:
    """A distinct final snapshot with its first witness trace in DFS order."""

    snapshot: Snapshot
    trace: str


@dataclass(frozen=True)
class RaceRecord:
    counter: CombinedCounter
    stored_trace: str
    stored_snapshot: Snapshot | None  # None in digest mode
    stored_digest: bytes | None  # None in full mode
    current_trace: str
    current_snapshot: Snapshot


@dataclass(frozen=True)
class ExplorationReport:
    outcomes: tuple[Outcome, ...]
    races: tuple[RaceRecord, ...]
    deadlocks: tuple[Finding, ...]
    block_forever: tuple[Finding, ...]
    stats: ExplorationStats
    complete: bool  # False when the step budget cut the search short
    digest_mode: bool

    @property
    def race_found(self) -> bool:
        """Order-dependent behavior detected.

        True when the state table recorded a race, or when exploration
        produced more than one distinct final snapshot (which is a race
        at the final counter by definition).
        """
        return bool(self.races) or len(self.outcomes) > 1


# ---------------------------------------------------------------------------
# Core stepping operations
# ---------------------------------------------------------------------------


def initial_interleaving(pair: ProgramPair) -> PartialInterleaving:
    """State at the first scheduling point, before any statement runs."""
    snapshot = Snapshot(
        variables=tuple(sorted(pair.variables)),
        output="",
        semaphores=(False,) * pair.num_semaphores,
        status0=Runnable(0) if pair.thread0.statements else DONE,
        status1=Runnable(0) if pair.thread1.statements else DONE,
    )
    return PartialInterleaving(snapshot, "", CombinedCounter(1, 1))


def _advance(
    pair: ProgramPair, i: PartialInterleaving, tid: int, snapshot: Snapshot, index: int
) -> tuple[StepEffect, PartialInterleaving]:
    done = index + 1 >= len(pair.thread(tid).statements)
    snapshot = snapshot.with_status(tid, DONE if done else Runnable(index + 1))
    counter = CombinedCounter(i.counter.s0 + (tid == 0), i.counter.s1 + (tid == 1))
    nxt = PartialInterleaving(snapshot, i.trace + str(tid), counter)
    return (_COMPLETED if done else _ADVANCED, nxt)


def step(
    pair: ProgramPair, i: PartialInterleaving, tid: int
) -> tuple[StepEffect, PartialInterleaving]:
    """Let thread ``tid`` attempt its next statement.

    Assignments, emits, and ``down`` always execute and advance the
    thread's counter.  An ``up`` on a raised semaphore does not execute:
    the thread blocks (no counter advance), or the result is ``Deadlock``
    if the other thread is already blocked.  Executing a thread's last
    statement yields ``CompletedThread``.

    Stepping a thread that is not runnable raises :class:`EngineError`.
    """
    status = i.snapshot.status(tid)
    if not isinstance(status, Runnable):
        raise EngineError(f"thread {tid} is not runnable: {status!r}")
    index = status.next_index
    stmt = pair.thread(tid).statements[index]
    snap = i.snapshot
    match stmt:
        case Assign(target, expr):
            value = eval_expr(expr, dict(snap.variables))
            return _advance(pair, i, tid, snap.with_variable(target, value), index)
        case Emit(text):
            new = replace(snap, output=snap.output + text)
            return _advance(pair, i, tid, new, index)
        case SemDown(sem):
            if snap.semaphores[sem]:
                sems = snap.semaphores[:sem] + (False,) + snap.semaphores[sem + 1 :]
                snap = replace(snap, semaphores=sems)
            return _advance(pair, i, tid, snap, index)
        case SemUp(sem):
            if not snap.semaphores[sem]:
                sems = snap.semaphores[:sem] + (True,) + snap.semaphores[sem + 1 :]
                return _advance(pair, i, tid, replace(snap, semaphores=sems), index)
            if isinstance(i.snapshot.status(1 - tid), BlockedOnSem):
                return (_DEADLOCK, i)
            blocked = PartialInterleaving(
                snap.with_status(tid, BlockedOnSem(sem)), i.trace, i.counter
            )
            return (NowBlocked(sem), blocked)
    raise TypeError(f"not a statement: {stmt!r}")


def unblock_check(pair: ProgramPair, i: PartialInterleaving) -> PartialInterleaving:
    """Complete any pending ``up`` whose semaphore has been lowered.

    The unblocked thread's statement executes within the same scheduling
    step: its counter advances and its trace symbol is appended.
    """
    for tid in (0, 1):
        status = i.snapshot.status(tid)
        if isinstance(status, BlockedOnSem) and not i.snapshot.semaphores[status.sem]:
            sem = status.sem
            sems = i.snapshot.semaphores[:sem] + (True,) + i.snapshot.semaphores[sem + 1 :]
            snap = replace(i.snapshot, semaphores=sems)
            # the pending statement's index equals the statements executed so far
            index = (i.counter.s0 if tid == 0 else i.counter.s1) - 1
            _, i = _advance(pair, i, tid, snap, index)
    return i


def _would_block(pair: ProgramPair, snapshot: Snapshot, tid: int) -> bool:
    status = snapshot.status(tid)
    if not isinstance(status, Runnable):
        return False
    stmt = pair.thread(tid).statements[status.next_index]
    return isinstance(stmt, SemUp) and snapshot.semaphores[stmt.index]


def replay(pair: ProgramPair, trace: str) -> PartialInterleaving:
    """Re-execute a trace from the initial state.

    Raises :class:`ReplayError` with the failing position when a symbol
    names a thread that is finished, blocked, or would block.
    """
    i = initial_interleaving(pair)
    for position, symbol in enumerate(trace):
        if symbol not in ("0", "1"):
            raise ReplayError(f"bad trace symbol {symbol!r}", position)
        tid = int(symbol)
        if not isinstance(i.snapshot.status(tid), Runnable):
            raise ReplayError(f"thread {tid} cannot execute", position)
        effect, i = step(pair, i, tid)
        if isinstance(effect, (NowBlocked, Deadlock)):
            raise ReplayError(f"thread {tid} blocks here", position)
    return i


# ---------------------------------------------------------------------------
# Exploration
# ---------------------------------------------------------------------------


@dataclass
class _Search:
    pair: ProgramPair
    cfg: ExplorationConfig
    table: StateTable | None
    stats: ExplorationStats = field(default_factory=ExplorationStats)
    outcomes: dict[Snapshot, str] = field(default_factory=dict)
    races: list[RaceRecord] = field(default_factory=list)
    deadlocks: list[Finding] = field(default_factory=list)
    block_forever: list[Finding] = field(default_factory=list)
    executed: int = 0

    def consume(self) -> None:
        self.executed += 1
        if self.executed > self.cfg.max_total_steps:
            raise BudgetExceeded

    def record_race(self, outcome: Race) -> None:
        self.stats.races_found += 1
        current = outcome.current
        if isinstance(outcome.stored, DigestEntry):
            rec = RaceRecord(
                counter=current.counter,
                stored_trace=outcome.stored.trace,
                stored_snapshot=None,
                stored_digest=outcome.stored.digest,
                current_trace=current.trace,
                current_snapshot=current.snapshot,
            )
        else:
            rec = RaceRecord(
                counter=current.counter,
                stored_trace=outcome.stored.trace,
                stored_snapshot=outcome.stored.snapshot,
                stored_digest=None,
                current_trace=current.trace,
                current_snapshot=current.snapshot,
            )
        self.races.append(rec)

    def record_complete(self, i: PartialInterleaving) -> None:
        self.stats.complete_interleavings += 1
        self.outcomes.setdefault(i.snapshot, i.trace)

    # --- DFS ---

    def visit(self, i: PartialInterleaving) -> None:
        """Handle a state reached by an executed statement (or the root)."""
        if self.table is not None:
            match self.table.visit(i):
                case FirstVisit():
                    pass
                case PrunedEqual():
                    if self.cfg.pruning:
                        self.stats.pruned_subtrees += 1
                        return
                case Race() as outcome:
                    # The stored visit already explored every schedule below
                    # this counter, so the subtree is cut after recording;
                    # states reachable only from the divergent side go
                    # unexplored (inherent to table-based detection).
                    self.record_race(outcome)
                    return
        self.expand(i)

    def expand(self, i: PartialInterleaving) -> None:
        done0 = isinstance(i.snapshot.status0, Done)
        done1 = isinstance(i.snapshot.status1, Done)
        if done0 and done1:
            self.record_complete(i)
            return
        if done0 or done1:
            self.completion_run(i, live=1 if done0 else 0)
            return
        wb0 = _would_block(self.pair, i.snapshot, 0)
        wb1 = _would_block(self.pair, i.snapshot, 1)
        if wb0 and wb1:
            self.deadlocks.append(Finding(i.counter, i.trace))
            return
        if wb0 or wb1:
            # Single successor: only the unblocked thread can move.
            _, nxt = step(self.pair, i, 1 if wb0 else 0)
            nxt = unblock_check(self.pair, nxt)
            self.consume()
            self.visit(nxt)
            return
        for tid in (0, 1):
            _, nxt = step(self.pair, i, tid)
            nxt = unblock_check(self.pair, nxt)
            self.stats.branch_statements += 1
            self.consume()
            self.visit(nxt)

    def completion_run(self, i: PartialInterleaving, live: int) -> None:
        """Run the sole live thread to the end, one statement at a time."""
        while True:
            if isinstance(i.snapshot.status(live), Done):
                self.record_complete(i)
                return
            if _would_block(self.pair, i.snapshot, live):
                self.block_forever.append(Finding(i.counter, i.trace))
                return
            _, i = step(self.pair, i, live)
            self.stats.completion_statements += 1
            self.consume()
            if self.table is not None:
                match self.table.visit(i):
                    case FirstVisit():
                        pass
                    case PrunedEqual():
                        if self.cfg.pruning:
                            # the stored visit already ran this suffix
                            self.stats.pruned_subtrees += 1
                            return
                    case Race() as outcome:
                        # no subtree to cut: finish the run to capture
                        # the (possibly new) final outcome
                        self.record_race(outcome)


def explore(pair: ProgramPair, cfg: ExplorationConfig | None = None) -> ExplorationReport:
    """Enumerate interleavings depth-first and build a report.

    The branch order explores thread 0's next statement before thread
    1's, so the first completed interleaving runs thread 0 as far as
    possible.  With ``race_detection`` the state table is consulted at
    every executed statement; ``pruning`` additionally cuts subtrees
    rooted at snapshot-identical states.  Without ``race_detection``
    there is no table and the search is exhaustive.

    If the total statement budget runs out the report is returned with
    ``complete=False``.
    """
    cfg = cfg or ExplorationConfig()
    table = StateTable(cfg.digest_mode) if cfg.race_detection else None
    search = _Search(pair, cfg, table)
    root = initial_interleaving(pair)

    depth = len(pair.thread0.statements) + len(pair.thread1.statements)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * depth + 200))
    complete = True
    try:
        search.visit(root)
    except BudgetExceeded:
        complete = False
    finally:
        sys.setrecursionlimit(old_limit)

    if table is not None:
        search.stats.table_entries = len(table)
    return ExplorationReport(
        outcomes=tuple(Outcome(s, t) for s, t in search.outcomes.items()),
        races=tuple(search.races),
        deadlocks=tuple(search.deadlocks),
        block_forever=tuple(search.block_forever),
        stats=search.stats,
        complete=complete,
        digest_mode=cfg.digest_mode,
    )
