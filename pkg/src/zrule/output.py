"""Deterministic PPM/PGM rendering and CSV/JSON serialization."""

from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from pathlib import Path

import numpy as np

from .arith import FactoredNat
from .engine import ABSENT, Tomography
from .gf2 import BitRow


@dataclasses.dataclass(frozen=True)
class Palette:
    colors: tuple[tuple[int, int, int], ...]
    absent: tuple[int, int, int]

    def __post_init__(self):
        if self.absent in self.colors:
            raise ValueError("absent colour must differ from every exponent colour")

    def lookup(self) -> np.ndarray:
        """Table indexed by ``exponent + 1``; row 0 is the absent colour."""
        return np.array((self.absent,) + self.colors, dtype=np.uint8)


DEFAULT_PALETTE = Palette(
    colors=(
        (255, 255, 255),
        (200, 200, 200),
        (255, 221, 0),
        (255, 150, 0),
        (240, 80, 0),
        (200, 0, 0),
        (150, 0, 110),
        (90, 0, 170),
        (0, 70, 200),
        (0, 20, 90),
    ),
    absent=(40, 170, 160),
)


def image_size(n_rows: int, n_cols: int, zoom: int) -> tuple[int, int]:
    """(width, height) of the brick layout."""
    return n_cols * zoom + (n_rows - 1) // 2, n_rows * zoom


def tomography_pixels(t: Tomography, palette: Palette = DEFAULT_PALETTE, zoom: int = 1) -> np.ndarray:
    if not t.rows:
        raise ValueError("empty tomography")
    if zoom < 1:
        raise ValueError("zoom must be >= 1")
    A = t.as_array().astype(np.int64)
    n_rows, n_cols = A.shape
    width, height = image_size(n_rows, n_cols, zoom)
    top = len(palette.colors) - 1
    idx = np.where(A == ABSENT, 0, np.minimum(A, top) + 1)
    # triangle cells that do not exist (right of a short row) stay background
    lengths = np.array([len(r) for r in t.rows])
    exists = np.arange(n_cols)[None, :] < lengths[:, None]
    cells = palette.lookup()[idx]
    img = np.empty((height, width, 3), dtype=np.uint8)
    img[:] = palette.colors[0]
    block = np.repeat(np.repeat(cells, zoom, axis=0), zoom, axis=1)
    mask = np.repeat(np.repeat(exists, zoom, axis=0), zoom, axis=1)
    for j in range(n_rows):
        shift = j // 2
        ys = slice(j * zoom, (j + 1) * zoom)
        span = img[ys, shift : shift + n_cols * zoom]
        m = mask[ys]
        span[m] = block[ys][m]
    return img


def ppm_bytes(img: np.ndarray) -> bytes:
    h, w = img.shape[:2]
    return f"P6\n{w} {h}\n255\n".encode("ascii") + np.ascontiguousarray(img, dtype=np.uint8).tobytes()


def pgm_bytes(t: Tomography, zoom: int = 1) -> bytes:
    """Grey levels fall from white (exponent 0) to black (max exponent); absent is mid grey."""
    A = t.as_array().astype(np.int64)
    top = max(int(A.max()), 1)
    grey = np.where(A == ABSENT, 128, 255 - (np.clip(A, 0, top) * 255) // top).astype(np.uint8)
    grey = np.repeat(np.repeat(grey, zoom, axis=0), zoom, axis=1)
    h, w = grey.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + grey.tobytes()


def render_tomography(t: Tomography, palette: Palette, path, zoom: int = 1) -> Path:
    path = Path(path)
    path.write_bytes(ppm_bytes(tomography_pixels(t, palette, zoom)))
    return path


def read_ppm(data: bytes) -> np.ndarray:
    magic, w, h, maxval, rest = data.split(maxsplit=4)
    if magic != b"P6" or maxval != b"255":
        raise ValueError("not an 8-bit P6 image")
    w, h = int(w), int(h)
    return np.frombuffer(rest[: w * h * 3], dtype=np.uint8).reshape(h, w, 3)


# -- serialization ----------------------------------------------------------

_SAFE_INT = 2**53


def to_jsonable(obj):
    if isinstance(obj, FactoredNat):
        return {"value": str(obj.value), "factors": [[p, e] for p, e in obj.factors]}
    if isinstance(obj, BitRow):
        return {"bits": "".join(map(str, obj.to_list())), "period": obj.period}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, (int, np.integer)):
        v = int(obj)
        return str(v) if abs(v) >= _SAFE_INT else v
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        return {str(k if not isinstance(k, tuple) else ",".join(map(str, k))): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(x) for x in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def json_text(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(x) for x in r])
    return buf.getvalue()


def _cell(x):
    if isinstance(x, FactoredNat):
        return str(x.value)
    return x


def factor_text(n: FactoredNat) -> str:
    if not n.factors:
        return "1"
    return "·".join(str(p) if e == 1 else f"{p}^{e}" for p, e in n.factors)


def _write(path, text: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def emit_csv(header, rows, path) -> Path:
    _write(path, csv_text(header, rows))
    return Path(path)


def emit_json(report, path) -> Path:
    _write(path, json_text(report))
    return Path(path)
