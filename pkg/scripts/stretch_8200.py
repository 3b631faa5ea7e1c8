"""Long runs: squarefree west terms and the square-part check past 2**13.

Takes a few tens of seconds on one core.
"""

import argparse
import time

from zrule.engine import InitialGeneration, west_edge
from zrule.extremes import check_conjecture3

p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
p.add_argument("--m", type=int, default=8200)
p.add_argument("--threads", type=int, default=1)
args = p.parse_args()

t0 = time.perf_counter()
edge = west_edge(InitialGeneration.naturals(), args.m, workers=args.threads)
print(f"west edge M={args.m}: {time.perf_counter() - t0:.1f}s")

bad = next((m for m, w in enumerate(edge.terms, 1) if not w.is_squarefree()), None)
print("all squarefree" if bad is None else f"first square factor at m={bad}")

g_max = (args.m - 1).bit_length() - 1
rep = check_conjecture3(g_max, args.m, edge)
for c in rep.cases:
    print(f"g={c.g:2d} n={c.n:5d} predicted={c.predicted} computed={c.computed}")
print("ok" if rep.ok else "FAILED", "skipped:", rep.skipped)
