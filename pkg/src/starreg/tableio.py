"""Plain-text fixture format for finite algebras.

A group file is a header line ``group n`` followed by the ``n`` rows of its
multiplication table.  A ring file is ``ring n`` followed by the ``n`` rows of
the addition table and then the ``n`` rows of the multiplication table.
Entries are whitespace separated; blank lines and ``#`` comments are ignored.
Identity, inverses, zero, one and negation are recovered from the tables.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import AlgebraError, FiniteAlgebra, Signature, group_from_table, ring_from_tables


def dumps(A: FiniteAlgebra) -> str:
    lines = [f"{A.signature.value} {A.size}"]
    if A.name:
        lines.insert(0, f"# {A.name}")
    for t in A.binops:
        lines.extend(" ".join(str(v) for v in row) for row in t)
    return "\n".join(lines) + "\n"


def loads(text: str, name: str = "") -> FiniteAlgebra:
    rows: list[list[int]] = []
    header: tuple[str, int] | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] not in ("group", "ring"):
                raise AlgebraError(f"bad header line: {raw!r}")
            header = (parts[0], int(parts[1]))
            continue
        rows.append([int(tok) for tok in line.split()])
    if header is None:
        raise AlgebraError("missing header line")
    kind, n = header
    ntables = 1 if kind == Signature.GROUP.value else 2
    if len(rows) != ntables * n:
        raise AlgebraError(f"expected {ntables * n} table rows, found {len(rows)}")
    if kind == Signature.GROUP.value:
        return group_from_table(rows, name)
    return ring_from_tables(rows[:n], rows[n:], name)


def read(path: str | Path) -> FiniteAlgebra:
    path = Path(path)
    return loads(path.read_text(encoding="utf-8"), name=path.stem)


def write(A: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(dumps(A), encoding="utf-8")
