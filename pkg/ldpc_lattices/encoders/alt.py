"""Linear-time coset encoding in approximate lower triangular (ALT) form.

Stored ALT form of an m x n matrix with gap g: the last m columns are the
parity part, `g` gap columns followed by `m - g` triangle columns. Triangle
column `n - m + g + t` has its first nonzero entry in row `t`, so rows
`0..m-g-1` of the triangle columns form a lower triangular block T with unit
diagonal. After permuting columns to [message | gap | triangle] and splitting
rows at `m - g`, the matrix reads

    [ A  B  T ]
    [ C  D  E ]

and for x = s + [A C]^T u the parity bits are

    y  = T^-1 x_A                      (forward substitution)
    p1 = Phi^-1 (x_B + E y),  Phi = D + E T^-1 B
    p2 = y + (T^-1 B) p1
"""
from typing import List, Optional, Tuple

import numpy as np

from ..matrix.linalg import as_bits, gf2_inverse, gf2_rref
from ..matrix.sparse import SparseBinaryIntMatrix
from ..utils.log import child_logger
from .base import CosetEncoder
from .dense import DenseEncoder

log = child_logger(__name__)


def _first_rows(H: SparseBinaryIntMatrix, cols: np.ndarray) -> np.ndarray:
    csc = H.csc
    starts = csc.indptr[cols]
    ends = csc.indptr[cols + 1]
    first = np.full(cols.size, -1, dtype=np.int64)
    nonempty = ends > starts
    first[nonempty] = csc.indices[starts[nonempty]]
    return first


def is_alt_form(H: SparseBinaryIntMatrix, g: int) -> bool:
    """Whether H is in stored ALT form with gap `g`."""
    binary = H.mod2()
    m, n = binary.shape
    if not 0 <= g <= m:
        return False
    triangle = np.arange(n - m + g, n)
    return bool(np.array_equal(_first_rows(binary, triangle), np.arange(m - g)))


def alt_gap(H: SparseBinaryIntMatrix) -> int:
    """Smallest gap g for which H is in stored ALT form (g = m always holds)."""
    binary = H.mod2()
    m, n = binary.shape
    first = _first_rows(binary, np.arange(n - m, n))
    for g in range(m):
        if np.array_equal(first[g:], np.arange(m - g)):
            return g
    return m


def greedy_triangulation(
    H: SparseBinaryIntMatrix,
) -> Tuple[List[int], List[int], List[int]]:
    """Greedy diagonal extension.

    Repeatedly takes a column with a single entry among the rows still open and
    makes that entry a diagonal element. When no such column is left, the open
    column of least residual degree is taken anyway and its other open rows are
    set aside as gap rows.

    Returns:
        Tuple[List[int], List[int], List[int]]: diagonal rows and columns in
        stored triangle order, then the gap rows
    """
    binary = H.mod2()
    m, n = binary.shape
    rows_of = binary.col_supports()
    cols_of = binary.row_supports()

    degree = np.array([len(r) for r in rows_of], dtype=np.int64)
    row_open = np.ones(m, dtype=bool)
    col_open = np.ones(n, dtype=bool)
    diag_rows: List[int] = []
    diag_cols: List[int] = []
    gap_rows: List[int] = []

    def close(row: int):
        row_open[row] = False
        for c in cols_of[row]:
            degree[c] -= 1

    while row_open.any():
        open_cols = np.flatnonzero(col_open & (degree > 0))
        if open_cols.size == 0:
            break
        singles = open_cols[degree[open_cols] == 1]
        if singles.size:
            col = int(singles[0])
        else:
            col = int(open_cols[np.argmin(degree[open_cols])])

        rows = [r for r in rows_of[col] if row_open[r]]
        col_open[col] = False
        diag_rows.append(rows[0])
        diag_cols.append(col)
        close(rows[0])
        for r in rows[1:]:
            gap_rows.append(r)
            close(r)

    gap_rows.extend(int(r) for r in np.flatnonzero(row_open))
    return diag_rows[::-1], diag_cols[::-1], gap_rows


def _triangle_rows(T) -> List[np.ndarray]:
    """Strictly lower part of each row of a unit lower triangular CSR block."""
    rows = []
    for t in range(T.shape[0]):
        support = T.indices[T.indptr[t] : T.indptr[t + 1]]
        rows.append(support[support < t])
    return rows


def _forward(rows: List[np.ndarray], x: np.ndarray) -> np.ndarray:
    """Solve T y = x (mod 2) for unit lower triangular T given by its rows."""
    y = np.array(x, dtype=np.uint8, copy=True)
    for t, support in enumerate(rows):
        if support.size:
            y[t] ^= np.bitwise_xor.reduce(y[support], axis=0)
    return y


class AltEncoder(CosetEncoder):
    """Coset encoder on a row and column permuted ALT form.

    Attributes:
        gap {int} -- gap of the ALT form in use
        row_order {np.ndarray} -- permuted row t is original row row_order[t]
        col_order {np.ndarray} -- [message | gap | triangle] original columns
    """

    name = "alt"

    def __init__(
        self,
        H: SparseBinaryIntMatrix,
        row_order: np.ndarray,
        col_order: np.ndarray,
        gap: int,
    ):
        binary = H.mod2()
        m, n = binary.shape
        k = n - m
        super().__init__(binary, col_order[:k])

        self.gap = gap
        self.row_order = np.asarray(row_order, dtype=np.int64)
        self.col_order = np.asarray(col_order, dtype=np.int64)

        P = binary.permute(self.row_order, self.col_order)
        top = m - gap
        csr = P.csr

        self._Hu = csr[:, :k]
        self._E = csr[top:, k + gap :]
        self._T_rows = _triangle_rows(csr[:top, k + gap :])

        B = as_bits(csr[:top, k : k + gap].toarray())
        D = as_bits(csr[top:, k : k + gap].toarray())
        self._Z = _forward(self._T_rows, B)
        phi = (D.astype(np.int64) + self._E @ self._Z.astype(np.int64)) & 1
        self._phi_inv = gf2_inverse(phi) if gap else np.zeros((0, 0), np.uint8)

    @classmethod
    def build(cls, H: SparseBinaryIntMatrix, **kwargs) -> CosetEncoder:
        return build_alt_encoder(H, **kwargs)

    def encode(self, u: np.ndarray, s: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=np.uint8)
        s = np.asarray(s, dtype=np.uint8)
        self._check(u, s)

        top = self.m - self.gap
        x = s[self.row_order].astype(np.int64) + self._Hu @ u.astype(np.int64)
        x &= 1
        y = _forward(self._T_rows, x[:top].astype(np.uint8))

        rhs = (x[top:] + self._E @ y.astype(np.int64)) & 1
        p1 = (self._phi_inv.astype(np.int64) @ rhs & 1).astype(np.uint8)
        p2 = y ^ (self._Z.astype(np.int64) @ p1 & 1).astype(np.uint8)

        c = np.zeros(self.n, dtype=np.uint8)
        c[self.col_order] = np.concatenate([u, p1, p2])
        return c


def _choose_gap_columns(
    binary: SparseBinaryIntMatrix,
    row_order: np.ndarray,
    tri_cols: np.ndarray,
    candidates: np.ndarray,
    gap: int,
) -> Optional[np.ndarray]:
    """Earliest candidate columns whose Schur complement columns are independent.

    Candidates are tried in growing prefixes so that large matrices rarely
    need the Schur complement of every column.
    """
    if gap == 0:
        return np.zeros(0, dtype=np.int64)

    top = binary.rows - gap
    P = binary.permute(row_order).csr
    rows = _triangle_rows(P[:top][:, tri_cols])
    E = P[top:][:, tri_cols]

    size = gap
    while True:
        prefix = candidates[:size]
        X = as_bits(P[:, prefix].toarray())
        schur = (X[top:] + E @ _forward(rows, X[:top]).astype(np.int64)) & 1

        echelon = gf2_rref(schur)
        if echelon.rank == gap:
            return prefix[np.asarray(echelon.pivots, dtype=np.int64)]
        if size >= candidates.size:
            return None
        size = min(4 * size + 64, candidates.size)


def build_alt_encoder(
    H: SparseBinaryIntMatrix, gap_hint: Optional[int] = None, **kwargs
) -> CosetEncoder:
    """Linear-time coset encoder for H.

    A matrix already in stored ALT form is used as is, with the gap columns
    re-chosen among the non-triangle columns if its Schur complement is
    singular. Other matrices are triangulated greedily. When the gap exceeds
    `gap_hint`, or no invertible Schur complement exists, a dense
    elimination encoder is returned instead.

    Args:
        H (SparseBinaryIntMatrix): parity-check matrix, full rank mod 2
        gap_hint (int, optional): largest acceptable gap

    Returns:
        CosetEncoder: an AltEncoder, or a DenseEncoder on fallback
    """
    binary = H.mod2()
    m, n = binary.shape
    k = n - m

    gap = alt_gap(binary)
    row_order = np.arange(m)
    tri_cols = np.arange(n - m + gap, n)

    if gap and (gap_hint is None or gap > gap_hint):
        diag_rows, diag_cols, gap_rows = greedy_triangulation(binary)
        log.debug("greedy triangulation of %r reached gap %d", binary, len(gap_rows))
        if len(gap_rows) < gap:
            gap = len(gap_rows)
            row_order = np.asarray(diag_rows + gap_rows, dtype=np.int64)
            tri_cols = np.asarray(diag_cols, dtype=np.int64)

    if gap_hint is not None and gap > gap_hint:
        log.warning(
            "no ALT form with gap <= %d (best %d), using dense encoding", gap_hint, gap
        )
        return DenseEncoder(binary)

    rest = np.setdiff1d(np.arange(n), tri_cols)
    # keep the stored gap columns first so they are kept whenever possible
    rest = np.concatenate([rest[rest >= k], rest[rest < k]])
    gap_cols = _choose_gap_columns(binary, row_order, tri_cols, rest, gap)
    if gap_cols is None:
        log.warning("singular Schur complement for %r, using dense encoding", binary)
        return DenseEncoder(binary)

    message_cols = np.setdiff1d(rest, gap_cols)
    col_order = np.concatenate([message_cols, gap_cols, tri_cols])

    encoder = AltEncoder(binary, row_order, col_order, gap)
    log.debug("alt encoder for %r with gap %d", binary, gap)
    return encoder
