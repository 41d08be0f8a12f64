"""Instance file format, generation, and the bundled 20-vertex benchmark.

Format: first token is n, followed by n rows of n whitespace-separated
tokens.  "inf" (or "-") marks an infinite entry; the diagonal must be
infinite.  Rendering always emits "inf" and LF newlines, and parsing
round-trips rendered output bit-exactly.
"""

from __future__ import annotations

import hashlib
import random
from importlib import resources

from .core import INF, CostMatrix
from .errors import DiagonalNotInf, NonSquare, ParseError

_INF_TOKENS = ("inf", "-")


def parse_matrix(text: str) -> CostMatrix:
    # (token, line, col) triples; CRLF tolerated via splitlines
    toks: list[tuple[str, int, int]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        col = 1
        for part in line.split():
            col = line.index(part, col - 1) + 1
            toks.append((part, ln, col))
            col += len(part)
    if not toks:
        raise ParseError("empty input", 1, 1)
    tok, ln, col = toks[0]
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(f"expected a vertex count, got {tok!r}", ln, col) from None
    if n < 2:
        raise ParseError(f"vertex count must be >= 2, got {n}", ln, col)
    body = toks[1:]
    if len(body) != n * n:
        tok, ln, col = body[-1] if body else toks[0]
        raise NonSquare(f"expected {n}x{n} = {n * n} entries, got {len(body)}", ln, col)
    rows: list[list[int]] = []
    for i in range(n):
        row: list[int] = []
        for j in range(n):
            tok, ln, col = body[i * n + j]
            if tok.lower() in _INF_TOKENS:
                v = INF
            else:
                try:
                    v = int(tok)
                except ValueError:
                    raise ParseError(f"bad entry {tok!r}", ln, col) from None
                if v >= INF:
                    raise ParseError(f"entry {tok!r} too large", ln, col)
            if i == j and v < INF:
                raise DiagonalNotInf(f"diagonal entry ({i + 1},{j + 1}) must be inf", ln, col)
            if i != j and v >= INF:
                raise ParseError(f"off-diagonal entry ({i + 1},{j + 1}) must be finite", ln, col)
            row.append(v)
        rows.append(row)
    return CostMatrix(rows)


def render_matrix(M: CostMatrix) -> str:
    lines = [str(M.n)]
    for i in range(1, M.n + 1):
        lines.append(" ".join(
            "inf" if M.d(i, j) >= INF else str(M.d(i, j))
            for j in range(1, M.n + 1)
        ))
    return "\n".join(lines) + "\n"


def gen_instance(n: int, max_cost: int, seed: int) -> CostMatrix:
    """Uniform off-diagonal costs in [1, max_cost].

    Deterministic: Mersenne Twister seeded with `seed`, entries drawn in
    row-major order over off-diagonal cells.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if max_cost < 1:
        raise ValueError("max_cost must be >= 1")
    rng = random.Random(seed)
    rows = [[INF if i == j else rng.randint(1, max_cost) for j in range(n)]
            for i in range(n)]
    return CostMatrix(rows)


def digest(M: CostMatrix) -> str:
    """Short stable checksum of the rendered instance."""
    return hashlib.sha256(render_matrix(M).encode("ascii")).hexdigest()[:16]


def load_example2() -> CostMatrix:
    """The bundled 20-vertex benchmark instance."""
    text = resources.files("cyclesolve").joinpath("data/example2.mat").read_text()
    return parse_matrix(text)
