"""Large groups: how good are the asymptotic formulas?

For independent payoffs E grows like sqrt(2d - 1) / 2; for 0 < r < 1 only
like d^(1/4).  E1 integrates the asymptotic density and E2 is its closed
form.  Printed are |approximation / E - 1|.
"""
from eqgames.asymptotics import table_cell

rs = (0.0, 0.01, 0.1, 0.3, 0.5, 0.8)
for which in (1, 2):
    print(f"|E{which}/E - 1|")
    print("   d  " + "".join(f"{r:>8g}" for r in rs))
    for d in (20, 40, 120, 200, 320, 440, 600):
        print(f"{d:4d}  " + "".join(f"{abs(table_cell(which, r, d)):8.3f}" for r in rs))
    print()
