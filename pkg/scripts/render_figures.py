"""Render p-adic tomographies of both generations as PPM images."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from zrule.engine import InitialGeneration, tomography
from zrule.output import DEFAULT_PALETTE, render_tomography

GENERATIONS = {
    "naturals": InitialGeneration.naturals(),
    "squarefree": InitialGeneration.squarefree_kernels(),
}


@dataclass(frozen=True)
class FigureConfig:
    out: Path = Path("figures")
    K: int = 256
    zoom: int = 2
    primes: tuple[int, ...] = field(default=(2, 3, 5, 7))


def main(cfg: FigureConfig):
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name, gen in GENERATIONS.items():
        for p in cfg.primes:
            path = render_tomography(tomography(gen, p, cfg.K), DEFAULT_PALETTE, cfg.out / f"{name}_p{p}_K{cfg.K}.ppm", cfg.zoom)
            print(path)


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=FigureConfig.out)
    ap.add_argument("--k", type=int, default=FigureConfig.K)
    ap.add_argument("--zoom", type=int, default=FigureConfig.zoom)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    a = ap.parse_args()
    main(FigureConfig(a.out, a.k, a.zoom, tuple(a.primes)))
