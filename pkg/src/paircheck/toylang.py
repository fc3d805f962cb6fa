"""Parser for the two-thread toy language.

Programs are a pair of straight-line statement lists over shared
variables, an append-only output string, and a bank of semaphores.
``repeat`` loops are unrolled at parse time so that every statement in a
:class:`ThreadProgram` is one atomic execution step, which keeps a
thread's execution counter a plain statement index.

Grammar (UTF-8 text, ``#`` line comments)::

    program   := decls? "thread0" block "thread1" block
    decls     := ("var" IDENT ("=" INT)? ";")* ("semaphores" INT ";")?
    block     := "{" stmt* "}"
    stmt      := IDENT "=" expr ";" | "emit" STRING ";"
               | "up" "(" INT ")" ";" | "down" "(" INT ")" ";"
               | "repeat" INT block
    expr      := term (("+"|"-") term)*
    term      := factor ("*" factor)*
    factor    := INT | IDENT | "(" expr ")"

Defaults: zero semaphores; declared variables start at 0.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = [
    "Assign",
    "BinOp",
    "Emit",
    "Expr",
    "IntLit",
    "ParseError",
    "ProgramPair",
    "SemDown",
    "SemUp",
    "Statement",
    "ThreadProgram",
    "Var",
    "eval_expr",
    "parse",
    "render",
    "statement_count",
    "wrap64",
]

DEFAULT_UNROLL_LIMIT = 1024

_KEYWORDS = frozenset(
    {"thread0", "thread1", "var", "semaphores", "emit", "up", "down", "repeat"}
)

_I64_MIN = -(1 << 63)
_U64 = 1 << 64


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # one of "+", "-", "*"
    left: "Expr"
    right: "Expr"


Expr = IntLit | Var | BinOp


@dataclass(frozen=True)
class Assign:
    target: str
    expr: Expr


@dataclass(frozen=True)
class Emit:
    text: str  # 1+ characters, appended atomically


@dataclass(frozen=True)
class SemUp:
    index: int


@dataclass(frozen=True)
class SemDown:
    index: int


Statement = Assign | Emit | SemUp | SemDown


@dataclass(frozen=True)
class ThreadProgram:
    statements: tuple[Statement, ...]


@dataclass(frozen=True)
class ProgramPair:
    thread0: ThreadProgram
    thread1: ThreadProgram
    num_semaphores: int
    variables: tuple[tuple[str, int], ...]  # (name, initial value), declaration order

    def thread(self, tid: int) -> ThreadProgram:
        return self.thread0 if tid == 0 else self.thread1


def statement_count(program: ThreadProgram) -> int:
    """Number of atomic statements after unrolling."""
    return len(program.statements)


def wrap64(value: int) -> int:
    """Wrap to 64-bit signed two's complement."""
    return (value - _I64_MIN) % _U64 + _I64_MIN


def eval_expr(expr: Expr, variables: dict[str, int]) -> int:
    """Evaluate an expression; total over 64-bit ints with wrap-around."""
    match expr:
        case IntLit(value):
            return wrap64(value)
        case Var(name):
            return variables[name]
        case BinOp(op, left, right):
            a = eval_expr(left, variables)
            b = eval_expr(right, variables)
            if op == "+":
                return wrap64(a + b)
            if op == "-":
                return wrap64(a - b)
            if op == "*":
                return wrap64(a * b)
            raise ValueError(f"unknown operator {op!r}")
        case _:
            raise TypeError(f"not an expression: {expr!r}")


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------


class ParseError(Exception):
    """Syntax or semantic error, with 1-based source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "int", "string", "punct", "eof"
    value: str | int
    line: int
    col: int


_PUNCT = frozenset("{}();=+-*")

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", '"': '"', "\\": "\\"}


def _lex(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(source)

    def advance(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance()
            continue
        if ch == "#":
            while i < n and source[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            advance(j - i)
            tokens.append(_Token("ident", word, start_line, start_col))
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(_Token("int", int(source[i:j]), start_line, start_col))
            advance(j - i)
            continue
        if ch == '"':
            advance()
            chars: list[str] = []
            while True:
                if i >= n or source[i] == "\n":
                    raise ParseError("unterminated string literal", start_line, start_col)
                c = source[i]
                if c == '"':
                    advance()
                    break
                if c == "\\":
                    advance()
                    if i >= n:
                        raise ParseError("unterminated string literal", start_line, start_col)
                    esc = source[i]
                    if esc not in _ESCAPES:
                        raise ParseError(f"bad escape \\{esc}", line, col)
                    chars.append(_ESCAPES[esc])
                    advance()
                else:
                    chars.append(c)
                    advance()
            tokens.append(_Token("string", "".join(chars), start_line, start_col))
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, start_line, start_col))
            advance()
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, tokens: list[_Token], unroll_limit: int):
        self.tokens = tokens
        self.pos = 0
        self.unroll_limit = unroll_limit
        self.variables: dict[str, int] = {}
        self.num_semaphores = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str, tok: _Token | None = None) -> ParseError:
        tok = tok or self.cur
        return ParseError(message, tok.line, tok.col)

    def advance(self) -> _Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect_punct(self, ch: str) -> _Token:
        if self.cur.kind != "punct" or self.cur.value != ch:
            raise self.error(f"expected {ch!r}, found {self._describe(self.cur)}")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        return self.cur.kind == "ident" and self.cur.value == word

    @staticmethod
    def _describe(tok: _Token) -> str:
        if tok.kind == "eof":
            return "end of input"
        return repr(tok.value)

    # --- integers with optional sign (declarations and counts only) ---

    def signed_int(self) -> int:
        sign = 1
        if self.cur.kind == "punct" and self.cur.value == "-":
            self.advance()
            sign = -1
        if self.cur.kind != "int":
            raise self.error(f"expected integer, found {self._describe(self.cur)}")
        return sign * int(self.advance().value)

    # --- top level ---

    def program(self) -> ProgramPair:
        self.decls()
        if not self.at_keyword("thread0"):
            raise self.error("expected 'thread0'")
        self.advance()
        t0 = self.block()
        if not self.at_keyword("thread1"):
            raise self.error("expected 'thread1'")
        self.advance()
        t1 = self.block()
        if self.cur.kind != "eof":
            raise self.error(f"trailing input: {self._describe(self.cur)}")
        return ProgramPair(
            thread0=ThreadProgram(tuple(t0)),
            thread1=ThreadProgram(tuple(t1)),
            num_semaphores=self.num_semaphores,
            variables=tuple(self.variables.items()),
        )

    def decls(self) -> None:
        while self.at_keyword("var"):
            self.advance()
            tok = self.cur
            if tok.kind != "ident" or tok.value in _KEYWORDS:
                raise self.error("expected variable name after 'var'")
            name = str(self.advance().value)
            if name in self.variables:
                raise self.error(f"variable {name!r} declared twice", tok)
            init = 0
            if self.cur.kind == "punct" and self.cur.value == "=":
                self.advance()
                init = wrap64(self.signed_int())
            self.expect_punct(";")
            self.variables[name] = init
        if self.at_keyword("semaphores"):
            tok = self.advance()
            count = self.signed_int()
            if count < 0:
                raise self.error("semaphore count must be non-negative", tok)
            self.expect_punct(";")
            self.num_semaphores = count

    def block(self) -> list[Statement]:
        self.expect_punct("{")
        out: list[Statement] = []
        while not (self.cur.kind == "punct" and self.cur.value == "}"):
            if self.cur.kind == "eof":
                raise self.error("expected '}'")
            self.statement(out)
            if len(out) > self.unroll_limit:
                raise self.error(
                    f"thread exceeds unroll limit of {self.unroll_limit} statements"
                )
        self.expect_punct("}")
        return out

    def statement(self, out: list[Statement]) -> None:
        tok = self.cur
        if self.at_keyword("emit"):
            self.advance()
            if self.cur.kind != "string":
                raise self.error("expected string literal after 'emit'")
            text = str(self.advance().value)
            if not text:
                raise self.error("emit string must have at least one character", tok)
            self.expect_punct(";")
            out.append(Emit(text))
            return
        if self.at_keyword("up") or self.at_keyword("down"):
            word = str(self.advance().value)
            self.expect_punct("(")
            index = self.signed_int()
            self.expect_punct(")")
            self.expect_punct(";")
            if not 0 <= index < self.num_semaphores:
                raise self.error(
                    f"semaphore index {index} out of range "
                    f"(program declares {self.num_semaphores})",
                    tok,
                )
            out.append(SemUp(index) if word == "up" else SemDown(index))
            return
        if self.at_keyword("repeat"):
            self.advance()
            count = self.signed_int()
            if count < 0:
                raise self.error("repeat count must be non-negative", tok)
            body: list[Statement] = []
            self.block_into(body)
            if count * len(body) > self.unroll_limit:
                raise self.error(
                    f"repeat unrolls to {count * len(body)} statements, "
                    f"over the limit of {self.unroll_limit}",
                    tok,
                )
            out.extend(body * count)
            return
        if tok.kind == "ident" and tok.value not in _KEYWORDS:
            name = str(self.advance().value)
            if name not in self.variables:
                raise self.error(f"undeclared variable {name!r}", tok)
            self.expect_punct("=")
            expr = self.expr()
            self.expect_punct(";")
            out.append(Assign(name, expr))
            return
        raise self.error(f"expected statement, found {self._describe(tok)}")

    def block_into(self, out: list[Statement]) -> None:
        self.expect_punct("{")
        while not (self.cur.kind == "punct" and self.cur.value == "}"):
            if self.cur.kind == "eof":
                raise self.error("expected '}'")
            self.statement(out)
            if len(out) > self.unroll_limit:
                raise self.error(
                    f"thread exceeds unroll limit of {self.unroll_limit} statements"
                )
        self.expect_punct("}")

    # --- expressions ---

    def expr(self) -> Expr:
        left = self.term()
        while self.cur.kind == "punct" and self.cur.value in ("+", "-"):
            op = str(self.advance().value)
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.cur.kind == "punct" and self.cur.value == "*":
            self.advance()
            left = BinOp("*", left, self.factor())
        return left

    def factor(self) -> Expr:
        tok = self.cur
        if tok.kind == "int":
            self.advance()
            return IntLit(int(tok.value))
        if tok.kind == "ident" and tok.value not in _KEYWORDS:
            self.advance()
            name = str(tok.value)
            if name not in self.variables:
                raise self.error(f"undeclared variable {name!r}", tok)
            return Var(name)
        if tok.kind == "punct" and tok.value == "(":
            self.advance()
            inner = self.expr()
            self.expect_punct(")")
            return inner
        raise self.error(f"expected expression, found {self._describe(tok)}")


def parse(source: str, *, unroll_limit: int = DEFAULT_UNROLL_LIMIT) -> ProgramPair:
    """Parse source text into a :class:`ProgramPair` with loops unrolled.

    Raises :class:`ParseError` with line/column on syntax errors,
    undeclared variables, out-of-range semaphore indices, negative repeat
    counts, and unrolled thread sizes over ``unroll_limit``.
    """
    return _Parser(_lex(source), unroll_limit).program()


# ---------------------------------------------------------------------------
# Canonical renderer (round-trip aid)
# ---------------------------------------------------------------------------


def _render_expr(expr: Expr) -> str:
    match expr:
        case IntLit(value):
            return str(value) if value >= 0 else f"(0 - {-value})"
        case Var(name):
            return name
        case BinOp(op, left, right):
            return f"({_render_expr(left)} {op} {_render_expr(right)})"
    raise TypeError(f"not an expression: {expr!r}")


def _escape(text: str) -> str:
    out = text.replace("\\", "\\\\").replace('"', '\\"')
    return out.replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")


def _render_stmt(stmt: Statement) -> str:
    match stmt:
        case Assign(target, expr):
            return f"{target} = {_render_expr(expr)};"
        case Emit(text):
            return f'emit "{_escape(text)}";'
        case SemUp(index):
            return f"up({index});"
        case SemDown(index):
            return f"down({index});"
    raise TypeError(f"not a statement: {stmt!r}")


def render(pair: ProgramPair) -> str:
    """Render a program back to canonical (unrolled) source text."""
    lines: list[str] = []
    for name, init in pair.variables:
        lines.append(f"var {name};" if init == 0 else f"var {name} = {init};")
    if pair.num_semaphores:
        lines.append(f"semaphores {pair.num_semaphores};")
    for label, thread in (("thread0", pair.thread0), ("thread1", pair.thread1)):
        lines.append(label + " {")
        for stmt in thread.statements:
            lines.append("  " + _render_stmt(stmt))
        lines.append("}")
    return "\n".join(lines) + "\n"
