import pytest
from hypothesis import given, strategies as st

from paircheck.instrument import InstrumentError, InstrumentOptions, instrument, strip


def norm(text: str) -> str:
    return " ".join(text.split())


# A string-printing routine that was instrumented by hand at its one
# atomic statement, and the output a naive automated pass should produce
# for it: extra hooks before the for loop and both calls, nothing before
# declarations or done(), nothing inside the for header, and no doubled
# hook at the already-covered statement.

HAND_INSTRUMENTED = """\
void str(char *s) {
  int i;

  for(i=0; s[i]; i++) {
    hook();  b->common.outstr[b->common.outidx++] = s[i];
  }
}

main() {
...
  if(child) {
    // thread 0
    str(``ab'');
    done();

  } else {
    // thread 1
    str(``12'');
    done();
  }
}
"""

NAIVE_EXPECTED = """\
void str(char *s) {
  int i;

  hook(); for(i=0; s[i]; i++) {
    hook();  b->common.outstr[b->common.outidx++] = s[i];
  }
}

main() {
...
  if(child) {
    // thread 0
    hook(); str(``ab'');
    done();

  } else {
    // thread 1
    hook(); str(``12'');
    done();
  }
}
"""

BARE = HAND_INSTRUMENTED.replace("hook();  b->", "b->")


class TestNaiveFidelity:
    def test_already_instrumented_input_with_skip_redundant(self):
        got = instrument(HAND_INSTRUMENTED, InstrumentOptions(skip_redundant=True))
        assert norm(got) == norm(NAIVE_EXPECTED)

    def test_uninstrumented_input_with_defaults(self):
        got = instrument(BARE)
        assert norm(got) == norm(NAIVE_EXPECTED)

    def test_strip_round_trips_the_listing(self):
        naive = instrument(HAND_INSTRUMENTED, InstrumentOptions(skip_redundant=True))
        assert norm(strip(naive)) == norm(strip(HAND_INSTRUMENTED)) == norm(BARE)


class TestInstrument:
    def test_empty_input(self):
        assert instrument("") == ""

    def test_top_level_declaration_untouched(self):
        assert instrument("int x;\n") == "int x;\n"
        assert instrument("int x;\nchar *p;\n") == "int x;\nchar *p;\n"

    def test_statements_in_function_body(self):
        got = instrument("void f() { x = 1; y = 2; }")
        assert got == "void f() { hook(); x = 1; hook(); y = 2; }"

    def test_declaration_inside_body_skipped(self):
        got = instrument("void f() { int x; x = 1; }")
        assert got == "void f() { int x; hook(); x = 1; }"

    def test_for_header_semicolons_untouched(self):
        got = instrument("void f() { for(i=0; i<3; i++) { work(); } }")
        assert got == "void f() { hook(); for(i=0; i<3; i++) { hook(); work(); } }"

    def test_else_continuation_not_hooked(self):
        got = instrument("void f() { if(c) { a(); } else { b(); } }")
        assert got == "void f() { hook(); if(c) { hook(); a(); } else { hook(); b(); } }"

    def test_do_while_tail_not_hooked(self):
        got = instrument("void f() { do { a(); } while(c); b(); }")
        assert got == "void f() { hook(); do { hook(); a(); } while(c); hook(); b(); }"

    def test_statement_after_closing_brace_hooked(self):
        got = instrument("void f() { if(c) { a(); } b(); }")
        assert got == "void f() { hook(); if(c) { hook(); a(); } hook(); b(); }"

    def test_done_never_hooked(self):
        got = instrument("void f() { a(); done(); }")
        assert got == "void f() { hook(); a(); done(); }"

    def test_string_literal_contents_untouched(self):
        src = 'void f() { s = "x; { } y"; t(); }'
        got = instrument(src)
        assert '"x; { } y"' in got
        assert got.count("hook();") == 2  # before s = ... and before t()

    def test_char_literal_and_comments_untouched(self):
        src = "void f() { c = ';'; /* x; { */ d(); // tail; \n }"
        got = instrument(src)
        assert "';'" in got
        assert "/* x; { */" in got
        assert got.count("hook();") == 2

    def test_custom_hook_token(self):
        got = instrument("void f() { a(); }", InstrumentOptions(hook_token="H();"))
        assert got == "void f() { H(); a(); }"

    def test_skip_redundant_idempotent(self):
        src = "void f() { if(c) { a(); b(); } else { d(); } e(); }"
        opts = InstrumentOptions(skip_redundant=True)
        once = instrument(src, opts)
        assert instrument(once, opts) == once

    def test_without_skip_redundant_hooks_pile_up(self):
        src = "void f() { a(); }"
        once = instrument(src)
        twice = instrument(once)
        assert twice.count("hook();") == 3  # naive mode re-hooks happily

    def test_unbalanced_open_brace_refused(self):
        with pytest.raises(InstrumentError):
            instrument("void f() { a();")

    def test_unbalanced_close_brace_reports_position(self):
        with pytest.raises(InstrumentError) as exc:
            instrument("void f() { a(); } }")
        assert exc.value.line == 1
        assert exc.value.col == 19

    def test_brace_in_string_not_counted(self):
        instrument('void f() { s = "}"; }')  # must not raise

    def test_token_conservation_on_hook_free_input(self):
        src = "void f() { if(c) { a(); } else { b(); } x = 1; }\nint g;\n"
        assert strip(instrument(src)) == src


class TestStrip:
    def test_removes_standalone_hooks(self):
        assert strip("void f() { hook(); a(); }") == "void f() { a(); }"

    def test_source_without_hooks_unchanged(self):
        src = "void f() { a(); }"
        assert strip(src) == src

    def test_hook_inside_string_preserved(self):
        src = 'void f() { s = "hook();"; }'
        assert strip(src) == src

    def test_hook_inside_comment_preserved(self):
        src = "void f() { /* hook(); */ a(); }"
        assert strip(src) == src

    def test_partial_identifier_not_stripped(self):
        src = "void f() { unhook(); }"
        assert strip(src) == src

    def test_custom_token(self):
        opts = InstrumentOptions(hook_token="H();")
        assert strip("void f() { H(); a(); }", opts) == "void f() { a(); }"


# ---------------------------------------------------------------------------
# Property: literal/comment safety and strip-of-instrument conservation
# ---------------------------------------------------------------------------

_nasty = st.text(alphabet=st.sampled_from(list("{};()for intx=1 \\n\t'")), max_size=12)


@given(literal=_nasty)
def test_string_literal_bytes_never_split(literal):
    body = literal.replace("\\", "\\\\").replace("'", "")
    src = 'void f() { s = "' + body + '"; a(); }'
    got = instrument(src)
    assert '"' + body + '"' in got
    assert strip(got) == src


@st.composite
def _c_like_sources(draw):
    statements = st.sampled_from(
        ["a();", "x = y + 1;", 'p = "s;{}";', "int k;", "done();", "hook(); b();"]
    )
    def block(depth):
        parts = draw(st.lists(statements, max_size=3))
        if depth < 2 and draw(st.booleans()):
            inner = block(depth + 1)
            parts.append("if (c) { " + " ".join(inner) + " }")
        return parts
    return "void f() {\n  " + "\n  ".join(block(0)) + "\n}\n"


@given(_c_like_sources())
def test_skip_redundant_idempotence_property(src):
    opts = InstrumentOptions(skip_redundant=True)
    once = instrument(src, opts)
    assert instrument(once, opts) == once
