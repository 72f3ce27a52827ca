"""Exact dense linear algebra over prime fields.

All arithmetic is integer arithmetic reduced modulo a prime; there is no
floating point anywhere in this package.  Matrices are immutable wrappers
around 2-D numpy ``int64`` arrays with entries normalized to ``0..p-1``.
Ranks, kernels and solutions come from Gauss-Jordan elimination with exact
modular inverses, so every derived basis is deterministic.

Conventions fixed here and relied on by every other module:

* Kronecker products pair indices row-major: ``(i, j) -> i * n_b + j``.
* Kernel bases are read off the unique reduced row echelon form.
* Column-space bases are echelonized (rref of the transpose).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_prime(n: int) -> bool:
    """Trial-division primality test; the moduli used here are tiny."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p, given by its characteristic."""

    p: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"characteristic must be a prime >= 2, got {self.p}")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverting 0 in F_p")
        return pow(a, self.p - 2, self.p)


class FpMatrix:
    """An immutable dense matrix over F_p."""

    __slots__ = ("p", "a", "_rref")

    def __init__(self, p: int, array) -> None:
        self.p = int(p)
        arr = np.array(array, dtype=np.int64, copy=True)
        if arr.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        arr %= self.p
        arr.setflags(write=False)
        self.a = arr
        self._rref = None

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @classmethod
    def column(cls, p: int, entries) -> "FpMatrix":
        return cls(p, np.asarray(entries, dtype=np.int64).reshape(-1, 1))

    # ------------------------------------------------------------------
    # basic structure
    # ------------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.a.shape == other.a.shape and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.p, self.a.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix(p={self.p}, shape={self.a.shape})"

    def is_zero(self) -> bool:
        return not self.a.any()

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _coerce(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise ValueError("mixing matrices over different fields")

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._coerce(other)
        return FpMatrix(self.p, self.a + other.a)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._coerce(other)
        return FpMatrix(self.p, self.a - other.a)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix(self.p, -self.a)

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._coerce(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return FpMatrix(self.p, self.a @ other.a)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self.p, self.a * (c % self.p))

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self.p, self.a.T)

    def power(self, e: int) -> "FpMatrix":
        if self.rows != self.cols:
            raise ValueError("powers need a square matrix")
        out = FpMatrix.identity(self.p, self.rows)
        for _ in range(e):
            out = out @ self
        return out

    def take_columns(self, idx) -> "FpMatrix":
        return FpMatrix(self.p, self.a[:, list(idx)])

    # ------------------------------------------------------------------
    # elimination
    # ------------------------------------------------------------------
    def rref(self) -> tuple["FpMatrix", tuple[int, ...]]:
        """Reduced row echelon form and its pivot columns."""
        if self._rref is None:
            m = self.a.copy()
            rows, cols = m.shape
            p = self.p
            pivots: list[int] = []
            r = 0
            for c in range(cols):
                if r == rows:
                    break
                nz = np.nonzero(m[r:, c])[0]
                if nz.size == 0:
                    continue
                i = r + int(nz[0])
                if i != r:
                    m[[r, i]] = m[[i, r]]
                m[r] = (m[r] * pow(int(m[r, c]), p - 2, p)) % p
                col = m[:, c].copy()
                col[r] = 0
                touched = np.nonzero(col)[0]
                if touched.size:
                    m[touched] -= np.outer(col[touched], m[r])
                    m[touched] %= p
                pivots.append(c)
                r += 1
            self._rref = (FpMatrix(p, m), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "FpMatrix":
        """Columns span the right null space; count = cols - rank."""
        red, pivots = self.rref()
        n = self.cols
        free = [c for c in range(n) if c not in set(pivots)]
        basis = np.zeros((n, len(free)), dtype=np.int64)
        for k, f in enumerate(free):
            basis[f, k] = 1
            for t, pc in enumerate(pivots):
                basis[pc, k] = (-int(red.a[t, f])) % self.p
        return FpMatrix(self.p, basis)

    def column_space(self) -> "FpMatrix":
        """Echelonized basis of the column space, returned as columns."""
        red, pivots = self.transpose().rref()
        return FpMatrix(self.p, red.a[: len(pivots)].T)

    def solve(self, b: "FpMatrix") -> "FpMatrix | None":
        """Solve ``self @ x = b``; ``None`` when inconsistent.

        The witness is re-checked exactly before it is returned.
        """
        self._coerce(b)
        if b.rows != self.rows:
            raise ValueError(f"rhs has {b.rows} rows, matrix has {self.rows}")
        aug = FpMatrix(self.p, np.hstack([self.a, b.a]))
        red, pivots = aug.rref()
        n = self.cols
        if any(pc >= n for pc in pivots):
            return None
        x = np.zeros((n, b.cols), dtype=np.int64)
        for t, pc in enumerate(pivots):
            x[pc, :] = red.a[t, n:]
        sol = FpMatrix(self.p, x)
        assert (self @ sol) == b, "solver produced an invalid witness"
        return sol

    # ------------------------------------------------------------------
    # assembly
    # ------------------------------------------------------------------
    def kron(self, other: "FpMatrix") -> "FpMatrix":
        self._coerce(other)
        return FpMatrix(self.p, np.kron(self.a, other.a))

    def direct_sum(self, other: "FpMatrix") -> "FpMatrix":
        self._coerce(other)
        out = np.zeros((self.rows + other.rows, self.cols + other.cols), dtype=np.int64)
        out[: self.rows, : self.cols] = self.a
        out[self.rows :, self.cols :] = other.a
        return FpMatrix(self.p, out)

    def dump(self) -> str:
        """Debug dump: ``rows cols p`` then sorted nonzero triplets."""
        lines = [f"{self.rows} {self.cols} {self.p}"]
        rs, cs = np.nonzero(self.a)
        for r, c in sorted(zip(rs.tolist(), cs.tolist())):
            lines.append(f"{r} {c} {int(self.a[r, c])}")
        return "\n".join(lines) + "\n"


def kronecker(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    return a.kron(b)


def direct_sum(a: FpMatrix, b: FpMatrix) -> FpMatrix:
    return a.direct_sum(b)


def hstack(mats: list[FpMatrix]) -> FpMatrix:
    p = mats[0].p
    return FpMatrix(p, np.hstack([m.a for m in mats]))


def vstack(mats: list[FpMatrix]) -> FpMatrix:
    p = mats[0].p
    return FpMatrix(p, np.vstack([m.a for m in mats]))


def block(p: int, grid: list[list["FpMatrix | None"]], row_dims: list[int], col_dims: list[int]) -> FpMatrix:
    """Assemble a block matrix; ``None`` entries are zero blocks."""
    out = np.zeros((sum(row_dims), sum(col_dims)), dtype=np.int64)
    r0 = 0
    for bi, rd in enumerate(row_dims):
        c0 = 0
        for bj, cd in enumerate(col_dims):
            blk = grid[bi][bj]
            if blk is not None:
                if blk.shape != (rd, cd):
                    raise ValueError(f"block ({bi},{bj}) has shape {blk.shape}, expected {(rd, cd)}")
                out[r0 : r0 + rd, c0 : c0 + cd] = blk.a
            c0 += cd
        r0 += rd
    return FpMatrix(p, out)


def quotient_by_subspace(p: int, sub_cols: FpMatrix) -> tuple[FpMatrix, FpMatrix]:
    """Quotient of ``F_p^n`` by the column span of ``sub_cols``.

    Returns ``(qmap, section)`` with ``qmap`` of shape ``(n - s) x n`` and
    ``section`` of shape ``n x (n - s)``, where ``qmap @ section = I`` and
    ``v - section @ qmap @ v`` always lies in the subspace.  The complement
    basis is the set of standard vectors at the non-pivot coordinates of the
    echelonized subspace, so the construction is deterministic.
    """
    n = sub_cols.rows
    red, pivots = sub_cols.transpose().rref()
    s = len(pivots)
    nonpiv = [c for c in range(n) if c not in set(pivots)]
    # v - sum_t v[p_t] * E_t lies in v + S and vanishes at the pivot coords,
    # where E_t are the echelon rows spanning S
    full = np.eye(n, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for t, pc in enumerate(pivots):
        full -= np.outer(red.a[t, :], eye[:, pc])
    qmap = FpMatrix(p, full[nonpiv, :])
    section = np.zeros((n, n - s), dtype=np.int64)
    for k, c in enumerate(nonpiv):
        section[c, k] = 1
    return qmap, FpMatrix(p, section)
