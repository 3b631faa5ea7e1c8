"""Regenerate the numeric tables as CSV files under an output directory.

    python scripts/reproduce_tables.py --out results/ --m 1024
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from zrule.arith import omega
from zrule.engine import InitialGeneration, west_edge
from zrule.extremes import (
    check_conjecture3,
    comparison_stats,
    divisor_listing,
    scientific,
    table_west_lag,
    unique_ordered,
)
from zrule.output import emit_csv, factor_text


@dataclass(frozen=True)
class TablesConfig:
    out: Path = Path("results")
    m: int = 1024
    g_max: int = 10
    conj_g_max: int = 13


def main(cfg: TablesConfig):
    cfg.out.mkdir(parents=True, exist_ok=True)
    M = max(cfg.m, 2**cfg.g_max + 1, 2**cfg.conj_g_max + 1)
    t0 = time.perf_counter()
    edge_n = west_edge(InitialGeneration.naturals(), M)
    edge_p = west_edge(InitialGeneration.squarefree_kernels(), M)
    print(f"west edges to {M}: {time.perf_counter() - t0:.1f}s")

    rows = table_west_lag(range(6, cfg.g_max + 1), edge_p)
    emit_csv(
        ["g", "m", "scientific", "omega", "factors"],
        [[r.g, r.m, scientific(r.value), r.omega, factor_text(r.value)] for r in rows],
        cfg.out / "extremes.csv",
    )

    st = comparison_stats(cfg.m, edge_n, edge_p)
    emit_csv(
        ["f", "s_nstar", "s_p"],
        [[f, a, b] for f, (a, b) in enumerate(zip(st.s_naturals, st.s_squarefree))],
        cfg.out / "surplus.csv",
    )
    print(f"equal west terms up to {cfg.m}: {st.equality_count}")

    for m in (255, 256):
        listing = divisor_listing(m, edge_n)
        emit_csv(["p", "divides"], [[p, int(d)] for p, d in listing], cfg.out / f"divisors_{m}.csv")
        print(f"W({m}): omega={omega(edge_n[m])} absent={[p for p, d in listing if not d]}")

    emit_csv(["value"], [[v] for v in unique_ordered(edge_p)[:40]], cfg.out / "uo_squarefree.csv")
    emit_csv(["value"], [[v] for v in unique_ordered(edge_n)[:40]], cfg.out / "uo_naturals.csv")

    rep = check_conjecture3(cfg.conj_g_max, M, edge_n)
    emit_csv(
        ["g", "n", "predicted", "computed"],
        [[c.g, c.n, c.predicted, c.computed] for c in rep.cases],
        cfg.out / "square_part.csv",
    )
    print(f"square part check: {'ok' if rep.ok else 'FAILED'} ({len(rep.cases)} cases)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=TablesConfig.out)
    ap.add_argument("--m", type=int, default=TablesConfig.m)
    ap.add_argument("--g-max", type=int, default=TablesConfig.g_max)
    ap.add_argument("--conj-g-max", type=int, default=TablesConfig.conj_g_max)
    a = ap.parse_args()
    main(TablesConfig(a.out, a.m, a.g_max, a.conj_g_max))
