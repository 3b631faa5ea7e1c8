"""Command line: ``zrule <command> [--flag value ...]``.

Exit status is 0 on success, 1 when a ``verify`` check finds a violation and
2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import extremes, gf2, structure
from .arith import is_prime
from .engine import InitialGeneration, build_triangle, tomography, west_edge
from .output import (
    DEFAULT_PALETTE,
    csv_text,
    factor_text,
    json_text,
    pgm_bytes,
    ppm_bytes,
    tomography_pixels,
)

FORMATS = ("text", "csv", "json", "ppm", "pgm")
VERIFIERS = ("squarefree-west", "conjecture3", "theorem3", "theorem5", "corollary1", "solitons", "periods")

DEFAULTS = {
    "gen": "naturals",
    "k": 12,
    "m": 35,
    "p": None,
    "g": 2,
    "g_min": 6,
    "g_max": 10,
    "half_width": None,
    "cap": 2**20,
    "zoom": 1,
    "format": "text",
    "out": None,
    "threads": 1,
    "word": False,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    gen: str = "naturals"
    primes: list[int] = field(default_factory=list)
    k: int = 12
    m: int = 35
    g: int = 2
    g_min: int = 6
    g_max: int = 10
    half_width: int | None = None
    cap: int = 2**20
    zoom: int = 1
    format: str = "text"
    out: str | None = None
    threads: int = 1
    check: str | None = None
    word: bool = False

    def validate(self):
        for name in ("k", "m", "cap", "zoom", "threads"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
        if self.g < 0 or self.g_min < 0 or self.g_max < 0:
            raise UsageError("g values must be >= 0")
        if self.half_width is not None and self.half_width < 1:
            raise UsageError("--half-width must be >= 1")
        for p in self.primes:
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format}")
        if self.format in ("ppm", "pgm") and not self.out:
            raise UsageError(f"--out is required for {self.format} output")


def parse_gen(text: str) -> InitialGeneration:
    name, _, arg = text.partition(":")
    try:
        if name == "naturals" and not arg:
            return InitialGeneration.naturals()
        if name in ("squarefree", "kernels") and not arg:
            return InitialGeneration.squarefree_kernels()
        if name in ("p-spaced", "p-section"):
            p = int(arg)
            if not is_prime(p):
                raise UsageError(f"{p} is not prime")
            return InitialGeneration.p_spaced(p) if name == "p-spaced" else InitialGeneration.p_section(p)
        if name == "explicit" and arg:
            vals = [int(x) for x in arg.split(",")]
            if min(vals) < 1:
                raise UsageError("explicit terms must be positive")
            return InitialGeneration.explicit(vals)
    except ValueError as exc:
        raise UsageError(f"bad --gen value {text!r}: {exc}") from None
    raise UsageError(f"bad --gen value {text!r}")


def read_config(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"config line without '=': {line!r}")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zrule", description="Z-rule triangles and their tomographies.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help, *flags):
        sp = sub.add_parser(name, help=help, allow_abbrev=False)
        sp.add_argument("--format", choices=FORMATS)
        sp.add_argument("--out")
        sp.add_argument("--threads", type=int)
        sp.add_argument("--config", help="flat key=value file; command-line flags win")
        for f in flags:
            kind = {"--word": "store_true", "--gen": str, "--p": str}.get(f, int)
            if kind == "store_true":
                sp.add_argument(f, action="store_true", default=None)
            else:
                sp.add_argument(f, type=kind)
        return sp

    cmd("triangle", "print a full triangle", "--gen", "--k")
    cmd("west", "west edge", "--gen", "--m")
    cmd("tomography", "exponent triangle of one prime", "--gen", "--p", "--k")
    cmd("period", "row period of the square-free p-tomography", "--p", "--word")
    cmd("soliton", "extract the soliton grown from p**g", "--p", "--g", "--half-width", "--cap")
    cmd("extremes", "west-edge values around powers of two (square-free kernels)", "--g-min", "--g-max")
    cmd("compare", "naturals vs square-free west edge statistics", "--k")
    sp = cmd("verify", "run a bounded check", "--gen", "--m", "--k", "--p", "--g-min", "--g-max", "--cap")
    sp.add_argument("check", choices=VERIFIERS)
    cmd("render", "PPM image of a tomography", "--gen", "--p", "--k", "--zoom")
    return parser


def make_config(ns: argparse.Namespace) -> RunConfig:
    values = dict(DEFAULTS)
    config_path = getattr(ns, "config", None)
    if config_path:
        for key, raw in read_config(config_path).items():
            if key not in values:
                raise UsageError(f"unknown config key {key!r}")
            values[key] = raw
    for key in DEFAULTS:
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    env = os.environ.get("ZRULE_THREADS")
    if env:
        values["threads"] = env
    try:
        primes = [int(x) for x in str(values["p"]).split(",")] if values["p"] not in (None, "") else []
        cfg = RunConfig(
            command=ns.command,
            gen=str(values["gen"]),
            primes=primes,
            k=int(values["k"]),
            m=int(values["m"]),
            g=int(values["g"]),
            g_min=int(values["g_min"]),
            g_max=int(values["g_max"]),
            half_width=None if values["half_width"] in (None, "") else int(values["half_width"]),
            cap=int(values["cap"]),
            zoom=int(values["zoom"]),
            format=str(values["format"]),
            out=values["out"],
            threads=int(values["threads"]),
            check=getattr(ns, "check", None),
            word=str(values["word"]).lower() in ("1", "true", "yes"),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cfg.validate()
    return cfg


def _need_prime(cfg: RunConfig, odd: bool = False) -> int:
    if len(cfg.primes) != 1:
        raise UsageError("exactly one --p is required")
    p = cfg.primes[0]
    if odd and p == 2:
        raise UsageError("an odd prime is required")
    return p


def _emit(cfg: RunConfig, text: str | bytes):
    if cfg.out:
        mode = "wb" if isinstance(text, bytes) else "w"
        kw = {} if isinstance(text, bytes) else {"encoding": "utf-8", "newline": ""}
        with open(cfg.out, mode, **kw) as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(cfg: RunConfig, header, rows, report=None, text=None):
    if cfg.format == "csv":
        _emit(cfg, csv_text(header, rows))
    elif cfg.format == "json":
        _emit(cfg, json_text(report if report is not None else [dict(zip(header, r)) for r in rows]))
    elif cfg.format == "text":
        _emit(cfg, text if text is not None else "\n".join(" ".join(str(x) for x in r) for r in rows) + "\n")
    else:
        raise UsageError(f"{cfg.format} output is not available for {cfg.command}")


def _image(cfg: RunConfig, tomo):
    if cfg.format == "pgm":
        _emit(cfg, pgm_bytes(tomo, cfg.zoom))
    else:
        _emit(cfg, ppm_bytes(tomography_pixels(tomo, DEFAULT_PALETTE, cfg.zoom)))


def run_triangle(cfg):
    t = build_triangle(parse_gen(cfg.gen), cfg.k)
    rows = [[j, k, c] for j, row in enumerate(t.rows, 1) for k, c in enumerate(row, 1)]
    text = "\n".join(" ".join(str(c) for c in row) for row in t.rows) + "\n"
    _table(cfg, ["row", "col", "value"], rows, t, text)
    return 0


def run_west(cfg):
    edge = west_edge(parse_gen(cfg.gen), cfg.m, cfg.threads)
    rows = [[m, w, factor_text(w), len(w.factors)] for m, w in enumerate(edge.terms, 1)]
    text = ", ".join(str(w) for w in edge.terms) + "\n"
    _table(cfg, ["m", "value", "factors", "omega"], rows, edge, text)
    return 0


def run_tomography(cfg):
    p = _need_prime(cfg)
    t = tomography(parse_gen(cfg.gen), p, cfg.k)
    if cfg.format in ("ppm", "pgm"):
        _image(cfg, t)
        return 0
    rows = [[j, k, int(e)] for j, r in enumerate(t.rows, 1) for k, e in enumerate(r, 1)]
    text = "\n".join(" ".join(str(int(e)) for e in r) for r in t.rows) + "\n"
    _table(cfg, ["row", "col", "exponent"], rows, t, text)
    return 0


def run_period(cfg):
    p = _need_prime(cfg, odd=True)
    rep = gf2.minimal_period(p)
    text = rep.summary() + "\n"
    if cfg.word:
        text += gf2.format_word(gf2.binom_parity_word(rep.minimal_period)) + "\n"
    row = [p, rep.minimal_period, rep.bound, rep.pre_period_rows]
    _table(cfg, ["p", "pi", "bound", "pre"], [row], rep, text)
    return 0


def run_soliton(cfg):
    p = _need_prime(cfg)
    try:
        rep = structure.extract_soliton(p, cfg.g, cfg.half_width, cfg.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    except structure.WindowCapExceeded as exc:
        rep = exc.report
    rows = [[j, k] for j, k in sorted(rep.cells)]
    text = (
        f"p={p} g={cfg.g} cells={len(rep.cells)} bbox={rep.bbox} "
        f"max_exponent={rep.max_exponent} touched_boundary={rep.touched_boundary}\n"
    )
    _table(cfg, ["row", "col"], rows, rep, text)
    return 0


def run_extremes(cfg):
    if cfg.g_min < 2 or cfg.g_max < cfg.g_min:
        raise UsageError("need 2 <= --g-min <= --g-max")
    rows = extremes.table_west_lag(range(cfg.g_min, cfg.g_max + 1))
    header = ["g", "m", "value", "scientific", "factors", "omega", "formula_agrees"]
    out = [
        [r.g, r.m, r.value, extremes.scientific(r.value), factor_text(r.value), r.omega, "" if r.formula_agrees is None else r.formula_agrees]
        for r in rows
    ]
    text = "\n".join(f"{r[0]:>3} {r[1]:>6} {r[3]:>14} omega={r[5]:<4} {r[4]}" for r in out) + "\n"
    _table(cfg, header, out, rows, text)
    return 0


def run_compare(cfg):
    st = extremes.comparison_stats(cfg.k)
    size = max(len(st.s_naturals), len(st.s_squarefree))
    pad = lambda h: h + [0] * (size - len(h))  # noqa: E731
    rows = list(zip(range(size), pad(st.s_naturals), pad(st.s_squarefree)))
    text = (
        f"K={st.K} equalities={st.equality_count}\n"
        + "\n".join(f"f={f} s_nstar={a} s_p={b}" for f, a, b in rows)
        + "\n"
    )
    _table(cfg, ["f", "s_nstar", "s_p"], rows, st, text)
    return 0


def run_verify(cfg):
    name = cfg.check
    lines: list[str] = []
    ok = True
    if name == "squarefree-west":
        rep = structure.check_squarefree_west(parse_gen(cfg.gen), cfg.m, cfg.threads)
        ok = rep.ok
        lines.append(f"squarefree-west M={cfg.m}: " + ("ok" if ok else f"violation at m={rep.first_violation[0]} ({rep.first_violation[1]})"))
    elif name == "conjecture3":
        rep = extremes.check_conjecture3(cfg.g_max, 2**cfg.g_max + 1)
        ok = rep.ok
        lines += [f"g={c.g} W({c.n})={c.computed} predicted={c.predicted} {'ok' if c.match else 'MISMATCH'}" for c in rep.cases]
    elif name == "theorem3":
        t = tomography(InitialGeneration.naturals(), 2, cfg.k)
        bad = [(j, k) for j in range(1, cfg.k + 1) for k in range(1, cfg.k - j + 2) if structure.predict_v2(j, k) != t.cell(j, k)]
        ok = not bad
        lines.append(f"theorem3 K={cfg.k}: {len(bad)} mismatching cells")
    elif name == "theorem5":
        rows = extremes.table_west_lag(range(max(cfg.g_min, 2), cfg.g_max + 1))
        bad = [r.m for r in rows if r.formula_agrees is False]
        ok = not bad
        lines.append(f"theorem5 g={max(cfg.g_min, 2)}..{cfg.g_max}: " + ("ok" if ok else f"mismatch at m={bad}"))
    elif name == "corollary1":
        prof = structure.v2_west_profile(cfg.m)
        ok = prof == structure.power_of_two_pattern(cfg.m)
        lines.append(f"corollary1 M={cfg.m}: " + ("ok" if ok else "pattern broken"))
    elif name == "solitons":
        p = _need_prime(cfg)
        rep = structure.check_soliton_disjointness(p, cfg.g_max, cfg.cap)
        ok = rep.ok
        lines.append(f"solitons p={p} g<= {cfg.g_max}: overlaps={rep.overlaps} touchings={rep.touchings} incomplete={rep.incomplete}")
    elif name == "periods":
        for p in cfg.primes or [3, 5, 7, 11, 13, 17, 19, 31, 127]:
            rep = gf2.minimal_period(p)
            good = rep.bound % rep.minimal_period == 0 and gf2.jump(rep.witness, rep.minimal_period) == rep.witness
            ok &= good
            lines.append(f"p={p} {rep.summary()} {'ok' if good else 'FAIL'}")
    _emit(cfg, "\n".join(lines) + "\n")
    return 0 if ok else 1


def run_render(cfg):
    p = _need_prime(cfg)
    if not cfg.out:
        raise UsageError("--out is required for render")
    t = tomography(parse_gen(cfg.gen), p, cfg.k)
    if cfg.format != "pgm":
        cfg.format = "ppm"
    _image(cfg, t)
    return 0


COMMANDS = {
    "triangle": run_triangle,
    "west": run_west,
    "tomography": run_tomography,
    "period": run_period,
    "soliton": run_soliton,
    "extremes": run_extremes,
    "compare": run_compare,
    "verify": run_verify,
    "render": run_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(ns)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, OSError) as exc:
        print(f"zrule: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
