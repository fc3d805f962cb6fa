"""
Hooking C-like source without a parser
======================================

To explore a real program's interleavings, a scheduler needs control
before every statement.  The instrumenter inserts a hook token at
statement boundaries using nothing but a token scanner: brace depth,
parenthesis depth, string/char literals, and comments.  The filters are
small and deliberately naive — redundant hooks are harmless overhead,
only placements that would break compilation are avoided.
"""

from paircheck import InstrumentOptions, instrument, strip

source = """\
int shared;

void worker(int *item) {
  int local;

  for(local = 0; local < 8; local++) {
    shared = shared + local;
  }
  if (shared > 10) {
    emit_result("big: { ; }");
  } else {
    emit_result(shared);
  }
  done();
}
"""

print("=== original ===")
print(source)

hooked = instrument(source)
print("=== instrumented ===")
print(hooked)

# Things worth noticing above:
#   * the top-level declaration `int shared;` is untouched,
#   * `int local;` is skipped inside the body (declaration keyword),
#   * the for-header semicolons get no hooks, the loop body does,
#   * the string literal containing "{ ; }" is copied verbatim,
#   * `} else {` is a continuation, not a statement start,
#   * the runtime's own done() is never hooked.

restored = strip(hooked)
print("=== stripped back ===")
print("round-trips byte-identically:", restored == source)

# With skip_redundant, instrumenting is idempotent: already-covered
# statements are left alone.
opts = InstrumentOptions(skip_redundant=True)
again = instrument(hooked, opts)
print("skip_redundant leaves instrumented code unchanged:", again == hooked)
