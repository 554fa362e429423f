"""Group file formats, corpus loading, and run configuration.

Cayley format::

    # label: C4
    order 4
    0 1 2 3
    1 2 3 0
    ...

Permutation format (one generator per line, as images of 0..d-1)::

    degree 3
    1 0 2
    1 2 0

Blank lines and ``#`` comments are ignored; a ``# label:`` comment names the group.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from pathlib import Path
from typing import TextIO

from .errors import GroupError, InvalidParameters, ParseError
from .families import builtin_corpus, make
from .group import (
    DEFAULT_ASSOCIATIVITY_CAP,
    DEFAULT_CLOSURE_CAP,
    DEFAULT_LATTICE_CAP,
    FiniteGroup,
    PermutationGenSet,
    build_from_cayley,
    build_from_permutations,
)


@dataclass(frozen=True)
class Config:
    lattice_cap: int = DEFAULT_LATTICE_CAP
    closure_cap: int = DEFAULT_CLOSURE_CAP
    associativity_full_check_cap: int = DEFAULT_ASSOCIATIVITY_CAP
    jobs: int = 1
    output: str = "-"
    format: str = "json"

    def __post_init__(self):
        for name in ("lattice_cap", "closure_cap", "associativity_full_check_cap", "jobs"):
            if getattr(self, name) < 1:
                raise InvalidParameters(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.format not in ("json", "csv", "text"):
            raise InvalidParameters(f"unknown format {self.format!r}")


def _content_lines(text: str):
    """(line number, tokens) for non-blank, non-comment lines; plus the label if given."""
    label = None
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.lower().startswith("label:"):
                label = body[len("label:"):].strip()
            continue
        out.append((lineno, stripped.split()))
    return out, label


def _ints(tokens: list[str], lineno: int, source: str) -> list[int]:
    vals = []
    for col, tok in enumerate(tokens, start=1):
        try:
            vals.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col, source) from None
    return vals


def _header(lines, keyword: str, source: str) -> int:
    lineno, toks = lines[0]
    if len(toks) != 2 or toks[0] != keyword:
        raise ParseError(f"expected '{keyword} <n>'", lineno, 1, source)
    (n,) = _ints(toks[1:], lineno, source)
    if n < 1:
        raise ParseError(f"{keyword} must be positive", lineno, 2, source)
    return n


def parse_group(
    text: str,
    source: str = "<string>",
    *,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    associativity_cap: int = DEFAULT_ASSOCIATIVITY_CAP,
) -> FiniteGroup:
    lines, label = _content_lines(text)
    if not lines:
        raise ParseError("empty group file", None, None, source)
    kind = lines[0][1][0]
    if kind == "order":
        n = _header(lines, "order", source)
        rows = lines[1:]
        if len(rows) != n:
            raise ParseError(f"expected {n} table rows, got {len(rows)}", rows[-1][0] if rows else lines[0][0], None, source)
        table = []
        for lineno, toks in rows:
            if len(toks) != n:
                raise ParseError(f"expected {n} entries, got {len(toks)}", lineno, min(len(toks), n) + 1, source)
            table.append(_ints(toks, lineno, source))
        return build_from_cayley(table, label=label or source, associativity_cap=associativity_cap)
    if kind == "degree":
        d = _header(lines, "degree", source)
        gens = []
        for lineno, toks in lines[1:]:
            if len(toks) != d:
                raise ParseError(f"expected {d} images, got {len(toks)}", lineno, min(len(toks), d) + 1, source)
            g = _ints(toks, lineno, source)
            if sorted(g) != list(range(d)):
                raise ParseError(f"not a permutation of 0..{d - 1}", lineno, 1, source)
            gens.append(tuple(g))
        return build_from_permutations(
            PermutationGenSet(d, tuple(gens)), closure_cap, label=label or source, associativity_cap=associativity_cap
        )
    raise ParseError(f"unknown header {kind!r}; expected 'order' or 'degree'", lines[0][0], 1, source)


def ingest_group(path: str | os.PathLike, **caps) -> FiniteGroup:
    """Read a Cayley or permutation file; the group is labeled by the file name."""
    p = Path(path)
    G = parse_group(p.read_text(encoding="utf-8"), str(p), **caps)
    return G.relabeled(p.name)


def write_cayley(G: FiniteGroup, out: TextIO) -> None:
    if G.label:
        out.write(f"# label: {G.label}\n")
    out.write(f"order {G.order}\n")
    for row in G.table.tolist():
        out.write(" ".join(str(v) for v in row) + "\n")


def cayley_text(G: FiniteGroup) -> str:
    buf = io.StringIO()
    write_cayley(G, buf)
    return buf.getvalue()


def load_source(source: str, config: Config = Config()) -> FiniteGroup:
    """``family:<spec>`` or ``file:<path>`` (a bare existing path also works)."""
    caps = {"closure_cap": config.closure_cap, "associativity_cap": config.associativity_full_check_cap}
    if source.startswith("family:"):
        return make(source[len("family:"):])
    if source.startswith("file:"):
        return ingest_group(source[len("file:"):], **caps)
    if Path(source).is_file():
        return ingest_group(source, **caps)
    raise ParseError(f"group source must be family:<spec> or file:<path>, got {source!r}")


def load_corpus(spec: str, config: Config = Config()) -> list[FiniteGroup]:
    """``builtin:<max_order>`` or ``dir:<path>`` (files read in lexicographic order)."""
    if spec.startswith("builtin:"):
        try:
            max_order = int(spec[len("builtin:"):])
        except ValueError:
            raise ParseError(f"bad builtin corpus size in {spec!r}") from None
        groups = builtin_corpus(max_order)
    elif spec.startswith("dir:"):
        root = Path(spec[len("dir:"):])
        if not root.is_dir():
            raise ParseError(f"not a directory: {root}")
        caps = {"closure_cap": config.closure_cap, "associativity_cap": config.associativity_full_check_cap}
        files = sorted(f for f in root.iterdir() if f.is_file() and not f.name.startswith("."))
        groups = [ingest_group(f, **caps) for f in files]
    else:
        raise ParseError(f"corpus must be builtin:<N> or dir:<path>, got {spec!r}")
    if not groups:
        raise GroupError(f"corpus {spec!r} is empty")
    return groups
