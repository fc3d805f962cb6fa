"""
How much does the state table prune?
====================================

The benchmark workload gives each thread n assignments to its own
variables, so every pair of schedules that reaches the same progress
point lands in identical states and the table prunes maximally.  The
exhaustive column counts statements executed in one-live-thread
completion runs over the whole tree and follows 2*C(2n, n-1); the pruned
column counts statements executed from two-live-thread branch states and
collapses to 2*n^2.

One column grows like 4^n, the other is quadratic: that gap is the whole
point of keying the search on combined execution counters.
"""

from math import comb

from paircheck import bench_table

rows = bench_table(1, 8)

print(f"{'n':>3} {'exhaustive':>11} {'pruned':>7}   closed forms")
for row in rows:
    formula_full = 2 * comb(2 * row.n, row.n - 1)
    formula_pruned = 2 * row.n * row.n
    print(
        f"{row.n:>3} {row.exhaustive_count:>11} {row.pruned_count:>7}"
        f"   2*C({2 * row.n},{row.n - 1}) = {formula_full:<6} 2*{row.n}^2 = {formula_pruned}"
    )

print()
print("ratio at n = 8:", rows[-1].exhaustive_count / rows[-1].pruned_count)
