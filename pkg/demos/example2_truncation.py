"""
Finite sections of a diagonal operator whose range sum is not closed.

B = diag(1, 1/2, 1/3, ...) has dense, non-closed range.  Any n x n section
is invertible, so every closedness condition holds at every n.  What does
shrink is the reduced minimum modulus gamma of [B1(n) B2(n)]: it falls like
sqrt(2)/n for two copies of B, while the constant control stays at sqrt(2).
"""

import math

from linrel import truncation as tr

ns = [4, 8, 16, 32, 64]

report = tr.example2_experiment(ns)
print(report.to_text())

pair = (tr.HARMONIC, tr.HARMONIC)
harm = tr.closedness_series(pair, "range_sum", ns, conditions=False)
const = tr.closedness_series((tr.CONSTANT_ONE, tr.CONSTANT_ONE), "range_sum", ns, conditions=False)
print(f"{'n':>4} {'gamma harmonic':>16} {'sqrt(2)/n':>12} {'gamma constant':>16}")
for h, c in zip(harm.rows, const.rows):
    print(f"{h.n:>4} {h.gamma:>16.10f} {math.sqrt(2) / h.n:>12.10f} {c.gamma:>16.10f}")
print("trends:", harm.trend, "/", const.trend)

angle = tr.closedness_series(pair, "graph_angle", ns, conditions=False)
print("\ncos of the Friedrichs angle between R^n x {0} and graph B(n):")
for r in angle.rows:
    print(f"  n={r.n:<3} {r.cos_friedrichs:.10f}")
