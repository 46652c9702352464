"""Dense matrices over a :class:`~combnet.gf.FieldCtx`.

Entries are raw integer field encodings.  Matrices are immutable; every
operation returns a new :class:`Mat`.  Over GF(2) rank and row reduction run
on rows packed into Python ints.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .gf import FieldCtx


class LinAlgError(ValueError):
    """Singular or inconsistent system, or mismatched shapes."""


class Mat:
    __slots__ = ("ctx", "rows", "cols", "data", "_packed")

    def __init__(self, ctx: FieldCtx, data: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(int(v) for v in row) for row in data)
        if cols is None:
            if not data:
                raise LinAlgError("column count required for an empty matrix")
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise LinAlgError("ragged rows")
            for v in row:
                if not 0 <= v < ctx.q:
                    raise LinAlgError(f"entry {v} outside GF({ctx.q})")
        self.ctx = ctx
        self.data = data
        self.rows = len(data)
        self.cols = cols
        self._packed = None

    @classmethod
    def _raw(cls, ctx: FieldCtx, data: tuple[tuple[int, ...], ...], cols: int) -> Mat:
        # trusted constructor: no validation
        m = cls.__new__(cls)
        m.ctx, m.data, m.rows, m.cols, m._packed = ctx, data, len(data), cols, None
        return m

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> Mat:
        return cls._raw(ctx, ((0,) * cols,) * rows, cols)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> Mat:
        return cls._raw(ctx, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def unit_row(cls, ctx: FieldCtx, n: int, j: int) -> Mat:
        return cls._raw(ctx, (tuple(int(i == j) for i in range(n)),), n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.ctx is other.ctx and self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(map(str, r)) for r in self.data)
        return f"Mat[{self.rows}x{self.cols} over GF({self.ctx.q})]({body})"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.data)

    def _check(self, other: Mat) -> None:
        if other.ctx is not self.ctx:
            raise LinAlgError(f"context mismatch: {self.ctx!r} vs {other.ctx!r}")

    def __add__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} + {other.shape}")
        add = self.ctx.add
        return Mat._raw(self.ctx, tuple(tuple(map(add, a, b)) for a, b in zip(self.data, other.data)), self.cols)

    def __sub__(self, other: Mat) -> Mat:
        self._check(other)
        if self.shape != other.shape:
            raise LinAlgError(f"shape mismatch {self.shape} - {other.shape}")
        sub = self.ctx.sub
        return Mat._raw(self.ctx, tuple(tuple(map(sub, a, b)) for a, b in zip(self.data, other.data)), self.cols)

    def __neg__(self) -> Mat:
        neg = self.ctx.neg
        return Mat._raw(self.ctx, tuple(tuple(map(neg, r)) for r in self.data), self.cols)

    def scale(self, c: int) -> Mat:
        mul = self.ctx.mul
        return Mat._raw(self.ctx, tuple(tuple(mul(c, v) for v in r) for r in self.data), self.cols)

    def __matmul__(self, other: Mat) -> Mat:
        self._check(other)
        if self.cols != other.rows:
            raise LinAlgError(f"shape mismatch {self.shape} @ {other.shape}")
        ctx = self.ctx
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        if ctx.base is None:
            p = ctx.p
            out = tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in cols_b) for r in self.data)
        else:
            add, mul = ctx.add, ctx.mul
            out = []
            for r in self.data:
                row = []
                for c in cols_b:
                    acc = 0
                    for x, y in zip(r, c):
                        if x and y:
                            acc = add(acc, mul(x, y))
                    row.append(acc)
                out.append(tuple(row))
            out = tuple(out)
        return Mat._raw(ctx, out, other.cols)

    def __pow__(self, e: int) -> Mat:
        if self.rows != self.cols:
            raise LinAlgError("power of a non-square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = Mat.identity(self.ctx, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def transpose(self) -> Mat:
        if self.rows == 0:
            return Mat.zeros(self.ctx, self.cols, 0)
        return Mat._raw(self.ctx, tuple(zip(*self.data)), self.rows)

    @property
    def T(self) -> Mat:
        return self.transpose()

    def take_rows(self, idx: Iterable[int]) -> Mat:
        return Mat._raw(self.ctx, tuple(self.data[i] for i in idx), self.cols)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Mat:
        return Mat._raw(self.ctx, tuple(r[c0:c1] for r in self.data[r0:r1]), c1 - c0)

    def packed(self) -> tuple[int, ...]:
        """GF(2) only: each row as an int, column 0 in the highest bit."""
        if self._packed is None:
            if self.ctx.q != 2:
                raise LinAlgError("packed rows are only defined over GF(2)")
            c = self.cols
            self._packed = tuple(int("".join(map(str, r)), 2) if c else 0 for r in self.data)
        return self._packed

    @classmethod
    def from_packed(cls, ctx: FieldCtx, rows: Sequence[int], cols: int) -> Mat:
        data = tuple(tuple((v >> (cols - 1 - j)) & 1 for j in range(cols)) for v in rows)
        m = cls._raw(ctx, data, cols)
        m._packed = tuple(rows)
        return m

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines.extend(" ".join(map(str, r)) for r in self.data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_tokens(cls, ctx: FieldCtx, tokens: Iterator[str]) -> Mat:
        """Read ``rows cols`` then row-major entries from a token stream."""
        try:
            rows, cols = int(next(tokens)), int(next(tokens))
            flat = [int(next(tokens)) for _ in range(rows * cols)]
        except StopIteration:
            raise LinAlgError("truncated matrix text") from None
        return cls(ctx, (flat[i * cols:(i + 1) * cols] for i in range(rows)), cols)

    @classmethod
    def from_text(cls, ctx: FieldCtx, text: str) -> Mat:
        tokens = iter(text.split())
        m = cls.from_tokens(ctx, tokens)
        if next(tokens, None) is not None:
            raise LinAlgError("trailing data after matrix")
        return m


# -- GF(2) packed kernels --------------------------------------------------------


def gf2_reduce(rows: Iterable[int]) -> list[int]:
    """Echelon basis (distinct leading bits) of the span of packed GF(2) rows."""
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def gf2_rank(rows: Iterable[int]) -> int:
    return len(gf2_reduce(rows))


def _gf2_rref(rows: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    basis = sorted(gf2_reduce(rows), reverse=True)
    # back-substitution bottom-up keeps every pivot bit in exactly one row
    for i in range(len(basis) - 1, 0, -1):
        top = basis[i].bit_length() - 1
        for j in range(i):
            if (basis[j] >> top) & 1:
                basis[j] ^= basis[i]
    pivots = [cols - b.bit_length() for b in basis]
    return basis, pivots


# -- generic elimination -------------------------------------------------------


def _rref_rows(ctx: FieldCtx, data: Sequence[Sequence[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in data]
    sub, mul, inv = ctx.sub, ctx.mul, ctx.inv
    pivots: list[int] = []
    lead = 0
    for c in range(cols):
        pr = next((i for i in range(lead, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[lead], rows[pr] = rows[pr], rows[lead]
        prow = rows[lead]
        if prow[c] != 1:
            s = inv(prow[c])
            prow = rows[lead] = [mul(s, v) for v in prow]
        for i in range(len(rows)):
            if i != lead and rows[i][c]:
                f = rows[i][c]
                rows[i] = [sub(a, mul(f, b)) if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form with zero rows removed, plus pivot columns."""
    if m.ctx.q == 2:
        basis, pivots = _gf2_rref(m.packed(), m.cols)
        return Mat.from_packed(m.ctx, basis, m.cols), pivots
    rows, pivots = _rref_rows(m.ctx, m.data, m.cols)
    return Mat._raw(m.ctx, tuple(tuple(r) for r in rows), m.cols), pivots


def rank(m: Mat) -> int:
    if m.ctx.q == 2:
        return gf2_rank(m.packed())
    return len(_rref_rows(m.ctx, m.data, m.cols)[1])


def solve(a: Mat, b: Mat) -> Mat:
    """Unique ``x`` with ``a @ x == b`` for square or tall ``a`` of full column rank."""
    a._check(b)
    if a.rows != b.rows:
        raise LinAlgError(f"shape mismatch: A is {a.shape}, b is {b.shape}")
    n = a.cols
    aug = hstack([a, b])
    rows, pivots = _rref_rows(a.ctx, aug.data, aug.cols)
    if pivots[:n] != list(range(n)):
        raise LinAlgError("rank deficient: no unique solution")
    if len(pivots) > n:
        raise LinAlgError("inconsistent system")
    return Mat._raw(a.ctx, tuple(tuple(r[n:]) for r in rows[:n]), b.cols)


def inverse(a: Mat) -> Mat:
    if a.rows != a.cols:
        raise LinAlgError("inverse of a non-square matrix")
    return solve(a, Mat.identity(a.ctx, a.rows))


def hstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise LinAlgError("nothing to stack")
    ctx, rows = mats[0].ctx, mats[0].rows
    for m in mats:
        if m.ctx is not ctx:
            raise LinAlgError("context mismatch in hstack")
        if m.rows != rows:
            raise LinAlgError("row count mismatch in hstack")
    data = tuple(tuple(v for m in mats for v in m.data[i]) for i in range(rows))
    return Mat._raw(ctx, data, sum(m.cols for m in mats))


def vstack(mats: Sequence[Mat]) -> Mat:
    if not mats:
        raise LinAlgError("nothing to stack")
    ctx, cols = mats[0].ctx, mats[0].cols
    for m in mats:
        if m.ctx is not ctx:
            raise LinAlgError("context mismatch in vstack")
        if m.cols != cols:
            raise LinAlgError("column count mismatch in vstack")
    out = Mat._raw(ctx, tuple(r for m in mats for r in m.data), cols)
    if ctx.q == 2 and all(m._packed is not None for m in mats):
        out._packed = tuple(v for m in mats for v in m._packed)
    return out


def block(grid: Sequence[Sequence[Mat]]) -> Mat:
    return vstack([hstack(list(row)) for row in grid])
