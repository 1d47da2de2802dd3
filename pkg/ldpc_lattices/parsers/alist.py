"""Reading and writing parity-check matrices in alist format.

Layout, one record per line::

    n m
    max_col_degree max_row_degree
    <n column degrees>
    <m row degrees>
    <n lines: 1-based row indices of each column, zero padded>
    <m lines: 1-based column indices of each row, zero padded>

Lifted matrices carry a leading ``modulus q`` line (``modulus 0`` for plain
integer matrices) and write every index as ``index:value``.
"""
import os
from typing import List, Optional, Tuple

from ..errors import FormatError
from ..matrix.sparse import SparseBinaryIntMatrix
from ..utils.log import child_logger

log = child_logger(__name__)


class _Lines:
    """Non-empty lines of a file, remembering 1-based line numbers."""

    def __init__(self, text: str, path: str):
        self.path = path
        self.items: List[Tuple[int, str]] = [
            (number, line.strip())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self.pos = 0

    def next(self, what: str) -> Tuple[int, str]:
        if self.pos >= len(self.items):
            raise FormatError(f"{self.path}: unexpected end of file, expected {what}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def ints(self, what: str, count: Optional[int] = None) -> Tuple[int, List[int]]:
        number, line = self.next(what)
        try:
            values = [int(token) for token in line.split()]
        except ValueError:
            raise FormatError(f"{self.path}:{number}: expected integers for {what}")
        if count is not None and len(values) != count:
            raise FormatError(
                f"{self.path}:{number}: expected {count} values for {what}, "
                f"got {len(values)}"
            )
        return number, values

    def entries(self, what: str, lifted: bool) -> Tuple[int, List[Tuple[int, int]]]:
        number, line = self.next(what)
        out = []
        for token in line.split():
            try:
                if lifted and ":" in token:
                    index, value = token.split(":", 1)
                    out.append((int(index), int(value)))
                else:
                    out.append((int(token), 1))
            except ValueError:
                raise FormatError(f"{self.path}:{number}: bad entry `{token}`")
        return number, [(index, value) for index, value in out if index != 0]


def loads_alist(text: str, path: str = "<alist>") -> SparseBinaryIntMatrix:
    """Parse alist text into a matrix.

    Arguments:
        text {str} -- file contents

    Keyword Arguments:
        path {str} -- name used in error messages (default: {"<alist>"})

    Returns:
        SparseBinaryIntMatrix -- binary (modulus 2) or lifted (modulus q) matrix

    Raises:
        FormatError -- malformed contents, with the offending line number
    """
    lines = _Lines(text, path)

    modulus: Optional[int] = 2
    lifted = False
    number, first = lines.next("header")
    if first.startswith("modulus"):
        try:
            modulus = int(first.split()[1])
        except (IndexError, ValueError):
            raise FormatError(f"{path}:{number}: malformed modulus line")
        lifted = True
        if modulus == 0:
            modulus = None
    else:
        lines.pos -= 1

    _, (n, m) = lines.ints("dimensions `n m`", 2)
    lines.ints("maximum degrees", 2)
    _, col_degrees = lines.ints("column degrees", n)
    _, row_degrees = lines.ints("row degrees", m)

    columns = {}
    for j in range(n):
        number, items = lines.entries(f"column {j + 1}", lifted)
        if len(items) != col_degrees[j]:
            raise FormatError(
                f"{path}:{number}: column {j + 1} has {len(items)} entries, "
                f"degree says {col_degrees[j]}"
            )
        for i, value in items:
            if not 1 <= i <= m:
                raise FormatError(f"{path}:{number}: row index {i} out of range")
            columns[(i - 1, j)] = value

    supports: List[List[int]] = []
    values: List[List[int]] = []
    for i in range(m):
        number, items = lines.entries(f"row {i + 1}", lifted)
        if len(items) != row_degrees[i]:
            raise FormatError(
                f"{path}:{number}: row {i + 1} has {len(items)} entries, "
                f"degree says {row_degrees[i]}"
            )
        support = []
        for j, value in items:
            if not 1 <= j <= n:
                raise FormatError(f"{path}:{number}: column index {j} out of range")
            if columns.get((i, j - 1)) != value:
                raise FormatError(
                    f"{path}:{number}: entry ({i + 1}, {j}) disagrees with the "
                    "column section"
                )
            support.append(j - 1)
        supports.append(support)
        values.append([value for _, value in items])

    if sum(len(s) for s in supports) != len(columns):
        raise FormatError(f"{path}: row and column sections list different entries")

    try:
        return SparseBinaryIntMatrix.from_supports(
            (m, n), supports, values if lifted else None, modulus
        )
    except ValueError as e:
        raise FormatError(f"{path}: {e}")


def dumps_alist(M: SparseBinaryIntMatrix) -> str:
    """Serialise a matrix; 0/1 matrices use the plain format.

    Unreduced integer matrices are written with `modulus 0`.
    """
    lifted = not (M.is_binary and M.modulus in (2, None))
    m, n = M.shape
    col_degrees = M.col_weights().tolist()
    row_degrees = M.row_weights().tolist()
    max_col = max(col_degrees, default=0)
    max_row = max(row_degrees, default=0)
    entries = M.entries()

    def fmt(index: int, value: int) -> str:
        return f"{index}:{value}" if lifted else str(index)

    out = []
    if lifted:
        out.append(f"modulus {M.modulus or 0}")
    out.append(f"{n} {m}")
    out.append(f"{max_col} {max_row}")
    out.append(" ".join(map(str, col_degrees)))
    out.append(" ".join(map(str, row_degrees)))

    for j in range(n):
        items = [fmt(i + 1, entries[(i, j)]) for i in M.col_support(j).tolist()]
        items += ["0"] * (max_col - len(items))
        out.append(" ".join(items))

    for i in range(m):
        items = [fmt(j + 1, entries[(i, j)]) for j in M.row_support(i).tolist()]
        items += ["0"] * (max_row - len(items))
        out.append(" ".join(items))

    return "\n".join(out) + "\n"


def read_alist(path: str) -> SparseBinaryIntMatrix:
    with open(path, "r", encoding="utf-8") as f:
        M = loads_alist(f.read(), path)

    log.debug("read %r from %s", M, path)
    return M


def write_alist(M: SparseBinaryIntMatrix, path: str):
    directory = os.path.dirname(path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)

    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_alist(M))

    log.debug("wrote %r to %s", M, path)
