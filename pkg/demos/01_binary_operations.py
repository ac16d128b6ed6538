"""Binary operations: evaluate, scan axioms, solve the residual problems.

The toolkit ships `plus` and `max` and accepts custom closed-form or
tabulated operations.  Axiom scans are falsification-only: a pass means no
counterexample on the declared grid.
"""
import gpmspace as g
from gpmspace.binop import SampleGrid

grid = SampleGrid((0.0, 0.5, 1.0, 2.0, 3.0))

print("=" * 60)
print("Axiom scan over the grid", grid.values)
print("=" * 60)
header = f"{'op':8s}" + "".join(f"{ax:>7s}" for ax in g.OP_AXIOMS)
print(header)
for op in (g.PLUS, g.MAX):
    row = f"{op.name:8s}"
    for ax in g.OP_AXIOMS:
        row += f"{g.check_op_axiom(op, ax, grid).verdict:>7s}"
    print(row)

print()
print("Axiom (g) asks x o x > x.  max is idempotent, so it fails everywhere:")
rep = g.check_op_axiom(g.MAX, "g", grid)
for w in rep.witnesses:
    print(f"  witness alpha={w.values['alpha']}: max(a,a) = {w.values['lhs']}")
print("plus only fails at the excluded boundary:", rep.data["excluded_boundary"])

print()
print("A broken operation is caught immediately:")
shifted = g.BinaryOperation.closed_form("shifted_plus", lambda a, b: a + b + 1.0,
                                        declared="bcd")
rep = g.check_op_axiom(shifted, "a", grid)
w = rep.witness
print(f"  identity fails at alpha={w.values['alpha']}: "
      f"{w.values['alpha']} o 0 = {w.values['lhs']}")

print()
print("Residual problems (find a third value under the operation):")
print("  solve_third(plus, 5, 3)  =", g.solve_third(g.PLUS, 5.0, 3.0), " (about 5 - 3)")
print("  solve_third(max, 5, 3)   =", g.solve_third(g.MAX, 5.0, 3.0))
print("  split_below(plus, 1)     =", g.split_below(g.PLUS, 1.0))
print("  split_below(max, 1)      =", g.split_below(g.MAX, 1.0))
print("  sub_idempotent(max, 1)   =", g.sub_idempotent(g.MAX, 1.0),
      " (strictly below 1 when self-combined)")
