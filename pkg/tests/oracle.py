"""Independent brute-force schedule enumerator used to cross-check the engine.

Materializes every realizable schedule of a program by recursing over
"which thread acts next" and executing statements directly on plain
dicts and lists.  No snapshots, no state table, no pruning, and its own
expression evaluator: this is the naive dual of the DFS engine.

A thread may be chosen whenever it is unfinished and its next statement
would not block (an ``up`` on a raised semaphore).  States are recorded
per combined counter at every scheduling point; a race exists when any
counter was reached with two different states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from paircheck.toylang import Assign, BinOp, Emit, IntLit, ProgramPair, SemDown, SemUp, Var

_I64_MIN = -(1 << 63)
_U64 = 1 << 64


def _wrap(value: int) -> int:
    return (value - _I64_MIN) % _U64 + _I64_MIN


def _eval(expr, variables: dict[str, int]) -> int:
    if isinstance(expr, IntLit):
        return _wrap(expr.value)
    if isinstance(expr, Var):
        return variables[expr.name]
    if isinstance(expr, BinOp):
        a = _eval(expr.left, variables)
        b = _eval(expr.right, variables)
        if expr.op == "+":
            return _wrap(a + b)
        if expr.op == "-":
            return _wrap(a - b)
        return _wrap(a * b)
    raise TypeError(expr)


@dataclass
class _State:
    variables: dict[str, int]
    output: str
    semaphores: list[bool]
    pos: list[int]

    def frozen(self) -> tuple:
        return (
            tuple(sorted(self.variables.items())),
            self.output,
            tuple(self.semaphores),
        )

    def copy(self) -> "_State":
        return _State(
            dict(self.variables), self.output, list(self.semaphores), list(self.pos)
        )


@dataclass
class OracleResult:
    outcomes: set = field(default_factory=set)  # frozen final states
    deadlock_traces: set = field(default_factory=set)
    block_forever_traces: set = field(default_factory=set)
    states_by_counter: dict = field(default_factory=dict)
    schedules: int = 0

    @property
    def race(self) -> bool:
        return any(len(states) > 1 for states in self.states_by_counter.values())

    @property
    def deadlock(self) -> bool:
        return bool(self.deadlock_traces)

    @property
    def block_forever(self) -> bool:
        return bool(self.block_forever_traces)


def enumerate_schedules(pair: ProgramPair) -> OracleResult:
    result = OracleResult()
    lengths = (len(pair.thread0.statements), len(pair.thread1.statements))

    def done(state: _State, tid: int) -> bool:
        return state.pos[tid] >= lengths[tid]

    def would_block(state: _State, tid: int) -> bool:
        stmt = pair.thread(tid).statements[state.pos[tid]]
        return isinstance(stmt, SemUp) and state.semaphores[stmt.index]

    def execute(state: _State, tid: int) -> None:
        stmt = pair.thread(tid).statements[state.pos[tid]]
        if isinstance(stmt, Assign):
            state.variables[stmt.target] = _eval(stmt.expr, state.variables)
        elif isinstance(stmt, Emit):
            state.output += stmt.text
        elif isinstance(stmt, SemDown):
            state.semaphores[stmt.index] = False
        elif isinstance(stmt, SemUp):
            assert not state.semaphores[stmt.index]
            state.semaphores[stmt.index] = True
        else:
            raise TypeError(stmt)
        state.pos[tid] += 1

    def record(state: _State) -> None:
        counter = (state.pos[0] + 1, state.pos[1] + 1)
        result.states_by_counter.setdefault(counter, set()).add(state.frozen())

    def walk(state: _State, trace: str) -> None:
        record(state)
        finished = [done(state, 0), done(state, 1)]
        if all(finished):
            result.outcomes.add(state.frozen())
            result.schedules += 1
            return
        choices = [
            tid
            for tid in (0, 1)
            if not finished[tid] and not would_block(state, tid)
        ]
        if not choices:
            if any(finished):
                result.block_forever_traces.add(trace)
            else:
                result.deadlock_traces.add(trace)
            result.schedules += 1
            return
        for tid in choices:
            branch = state.copy()
            execute(branch, tid)
            walk(branch, trace + str(tid))

    initial = _State(
        variables=dict(pair.variables),
        output="",
        semaphores=[False] * pair.num_semaphores,
        pos=[0, 0],
    )
    walk(initial, "")
    return result
