"""Plain-text state files.

A file starts with a ``format`` line (``dense`` or ``fano``) and a ``dims``
line, followed by the payload. ``#`` starts a comment.

Dense payload: one matrix row per line, entries such as ``0.25``,
``0.1-0.2i`` or ``-1e-3i``::

    format dense
    dims 2 2
    0.5 0 0 0.5
    0   0 0 0
    0   0 0 0
    0.5 0 0 0.5

Fano payload: ``key value`` lines with 1-based keys ``alpha.i``, ``beta.j``
and ``gamma.i.j`` in the generator order of :mod:`discordium.sun`;
missing coefficients are zero::

    format fano
    dims 2 2
    alpha.3 0.2
    gamma.3.3 0.5
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, ParseError
from .linalg import DensityMatrix, validate_density
from .sun import FanoCoefficients, fano_compose, fano_decompose

FORMATS = ("dense", "fano")


@dataclass(frozen=True)
class StateFile:
    format: str
    dim_a: int
    dim_b: int
    matrix: np.ndarray | None = None
    fano: FanoCoefficients | None = None

    def to_state(self, **tolerances) -> DensityMatrix:
        """Validated state; raises a :class:`ValidationError` subclass."""
        if self.format == "fano":
            return fano_compose(self.fano)  # type: ignore[arg-type]
        return validate_density(self.matrix, self.dim_a, self.dim_b, **tolerances)


def _tokens(line: str) -> list[tuple[int, str]]:
    """Whitespace-separated tokens with 1-based start columns."""
    out, col, n = [], 0, len(line)
    while col < n:
        if line[col].isspace():
            col += 1
            continue
        start = col
        while col < n and not line[col].isspace():
            col += 1
        out.append((start + 1, line[start:col]))
    return out


def parse_complex(token: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi`` or ``bi``; raises ValueError otherwise."""
    t = token.strip()
    if not t or "j" in t.lower() or " " in t:
        raise ValueError(token)
    return complex(t.replace("i", "j").replace("I", "j"))


def parse_state(text: str) -> StateFile:
    fmt: str | None = None
    dims: tuple[int, int] | None = None
    rows: list[list[complex]] = []
    named: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head = toks[0][1].lower()
        if head == "format":
            if len(toks) != 2 or toks[1][1].lower() not in FORMATS:
                col = toks[1][0] if len(toks) > 1 else toks[0][0]
                raise ParseError("expected 'format dense' or 'format fano'", lineno, col)
            fmt = toks[1][1].lower()
            continue
        if head == "dims":
            try:
                if len(toks) != 3:
                    raise ValueError
                dims = (int(toks[1][1]), int(toks[2][1]))
                if min(dims) < 2:
                    raise ValueError
            except ValueError:
                raise ParseError("expected 'dims <dA> <dB>' with integers >= 2", lineno, toks[0][0]) from None
            continue
        if fmt is None or dims is None:
            raise ParseError("'format' and 'dims' lines must precede the payload", lineno, toks[0][0])
        if fmt == "dense":
            row = []
            for col, tok in toks:
                try:
                    row.append(parse_complex(tok))
                except ValueError:
                    raise ParseError(f"invalid complex entry {tok!r}", lineno, col) from None
            if len(row) != dims[0] * dims[1]:
                raise ParseError(
                    f"row has {len(row)} entries, expected {dims[0] * dims[1]}", lineno, toks[0][0]
                )
            rows.append(row)
        else:
            vals = [t for t in toks if t[1] != "="]
            if len(vals) != 2:
                raise ParseError("expected '<key> <value>'", lineno, toks[0][0])
            (kcol, key), (vcol, val) = vals
            try:
                named[key] = float(val)
            except ValueError:
                raise ParseError(f"invalid number {val!r}", lineno, vcol) from None
            try:
                FanoCoefficients.from_named(dims[0], dims[1], {key: 0.0})
            except IndexOutOfRange:
                raise ParseError(f"unknown coefficient {key!r}", lineno, kcol) from None
    if fmt is None or dims is None:
        raise ParseError("missing 'format' or 'dims' header")
    if fmt == "dense":
        if len(rows) != dims[0] * dims[1]:
            raise ParseError(f"expected {dims[0] * dims[1]} rows, found {len(rows)}")
        return StateFile(fmt, dims[0], dims[1], matrix=np.array(rows, dtype=complex))
    return StateFile(fmt, dims[0], dims[1], fano=FanoCoefficients.from_named(dims[0], dims[1], named))


def read_state_file(path) -> StateFile:
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh.read())


def format_number(x: float) -> str:
    return f"{x:.17g}"


def format_complex(z: complex) -> str:
    if z.imag == 0:
        return format_number(z.real)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def format_dense(rho: DensityMatrix) -> str:
    lines = ["format dense", f"dims {rho.dim_a} {rho.dim_b}"]
    lines += [" ".join(format_complex(complex(z)) for z in row) for row in rho.matrix]
    return "\n".join(lines) + "\n"


def format_fano(c: FanoCoefficients | DensityMatrix) -> str:
    if isinstance(c, DensityMatrix):
        c = fano_decompose(c)
    lines = ["format fano", f"dims {c.dim_a} {c.dim_b}"]
    lines += [f"{k} {format_number(v)}" for k, v in c.named().items() if v != 0.0]
    return "\n".join(lines) + "\n"
