"""Subspaces of F_q^n, Grassmannians, and alpha-cover subspace codes.

A :class:`Subspace` is stored as the reduced row echelon basis of its row
space, so equal subspaces have identical matrices.

An *alpha-cover code* with threshold ``D`` is a list of subspaces in which
every alpha of them together span at least ``D`` dimensions.  These are the
coding-coefficient sets for networks whose receivers each hear alpha
middle-layer nodes.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .gf import FieldCtx, extension, gf
from .linalg import Mat, gf2_rank, gf2_reduce, rank, rref, vstack

DEFAULT_ENUM_CAP = 1 << 20


class SubspaceError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    basis: Mat  # rref, no zero rows

    @property
    def ctx(self) -> FieldCtx:
        return self.basis.ctx

    @property
    def n(self) -> int:
        return self.basis.cols

    @property
    def k(self) -> int:
        return self.basis.rows

    dim = k

    def __repr__(self) -> str:
        rows = ",".join("".join(map(str, r)) for r in self.basis.data) if self.ctx.q <= 10 else repr(self.basis.data)
        return f"<{rows}>"

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def contains(self, vec: Sequence[int]) -> bool:
        return rank(vstack([self.basis, Mat(self.ctx, [vec], self.n)])) == self.k


def subspace_from(m: Mat) -> Subspace:
    """Canonical form of the row space of ``m``."""
    return Subspace(rref(m)[0])


def span(ctx: FieldCtx, vectors: Iterable[Sequence[int]], n: int) -> Subspace:
    return subspace_from(Mat(ctx, list(vectors), n))


def zero_space(ctx: FieldCtx, n: int) -> Subspace:
    return Subspace(Mat.zeros(ctx, 0, n))


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ctx is not v.ctx or u.n != v.n:
        raise SubspaceError("subspaces live in different ambient spaces")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    return subspace_from(vstack([u.basis, v.basis]))


def sum_dim(spaces: Sequence[Subspace]) -> int:
    """dim of the sum of ``spaces`` (computed without canonicalizing)."""
    ctx = spaces[0].ctx
    if ctx.q == 2:
        return gf2_rank(v for s in spaces for v in s.basis.packed())
    return rank(vstack([s.basis for s in spaces]))


def subspace_distance(u: Subspace, v: Subspace) -> int:
    """2 dim(U+V) - dim U - dim V."""
    _same_ambient(u, v)
    return 2 * sum_dim([u, v]) - u.k - v.k


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    return num // den


def _pivot_order(n: int, k: int, ctx: FieldCtx) -> Iterator[Subspace]:
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pset]
        for values in itertools.product(range(ctx.q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(Mat._raw(ctx, tuple(tuple(r) for r in rows), n))


def enumerate_grassmannian(n: int, k: int, q: int | FieldCtx, *, cap: int = DEFAULT_ENUM_CAP,
                           order: str = "lex") -> Iterator[Subspace]:
    """Every k-dimensional subspace of F_q^n exactly once.

    ``order="lex"`` sorts by the canonical matrix read row-major, so
    ``<000010,000001>`` comes first. ``order="pivot"`` walks pivot column sets
    lexicographically and then the free entries (row-major) in p-ary order.
    """
    ctx = q if isinstance(q, FieldCtx) else gf(q)
    count = gaussian_binomial(n, k, ctx.q)
    if count > cap:
        raise SubspaceError(f"Grassmannian G_{ctx.q}({n},{k}) has {count} members, above cap {cap}")
    if order == "pivot":
        yield from _pivot_order(n, k, ctx)
    elif order == "lex":
        yield from sorted(_pivot_order(n, k, ctx), key=lambda s: s.basis.data)
    else:
        raise SubspaceError(f"unknown enumeration order {order!r}")


def aq_bounds(n: int, k: int, delta: int, q: int) -> tuple[int, int]:
    """Lower and upper bound on A_q(n, k, 2*delta), the largest constant-dimension code size."""
    if not 1 <= delta <= k <= n:
        raise SubspaceError(f"need 1 <= delta <= k <= n, got n={n}, k={k}, delta={delta}")
    lower = q ** ((n - k) * (k - delta + 1))
    return (lower, 2 * lower) if delta > 1 else (lower, 4 * lower)


# -- alpha-cover codes ---------------------------------------------------------


class CoverCheck(NamedTuple):
    ok: bool
    violation: tuple[int, ...] | None = None  # lexicographically first bad alpha-subset
    dim: int | None = None  # dimension that subset spans

    def __bool__(self) -> bool:
        return self.ok


class _Spans:
    """Dimension of sums of members, with a packed fast path over GF(2)."""

    def __init__(self, members: Sequence[Subspace]):
        self.members = members
        self.gf2 = bool(members) and members[0].ctx.q == 2
        if self.gf2:
            self.packed = [m.basis.packed() for m in members]

    def reduced(self, idx: Iterable[int]) -> list[int] | Mat:
        if self.gf2:
            return gf2_reduce(v for i in idx for v in self.packed[i])
        return rref(vstack([self.members[i].basis for i in idx]))[0]

    def dim_with(self, partial, i: int) -> int:
        if self.gf2:
            return gf2_rank(itertools.chain(partial, self.packed[i]))
        return rank(vstack([partial, self.members[i].basis]))

    def dim(self, partial) -> int:
        return len(partial) if self.gf2 else partial.rows


def alpha_cover_check(members: Sequence[Subspace], alpha: int, dim: int) -> CoverCheck:
    """Does every alpha-subset of ``members`` span at least ``dim`` dimensions?

    Subsets are scanned in lexicographic order of member positions; the first
    failing one is reported.
    """
    members = list(members)
    if alpha < 1 or alpha > len(members):
        raise SubspaceError(f"alpha={alpha} must lie in [1, {len(members)}]")
    for m in members[1:]:
        _same_ambient(members[0], m)
    spans = _Spans(members)
    if alpha == 1:
        for i, m in enumerate(members):
            if m.k < dim:
                return CoverCheck(False, (i,), m.k)
        return CoverCheck(True)
    # prefixes that already reach dim need no extension
    for prefix in itertools.combinations(range(len(members)), alpha - 1):
        if prefix[-1] >= len(members) - 1:
            continue
        red = spans.reduced(prefix)
        if spans.dim(red) >= dim:
            continue
        for last in range(prefix[-1] + 1, len(members)):
            d = spans.dim_with(red, last)
            if d < dim:
                return CoverCheck(False, (*prefix, last), d)
    return CoverCheck(True)


@dataclass
class CoverCode:
    """Subspaces of F_q^n such that every ``alpha`` of them span >= ``dim`` dimensions."""

    n: int
    q: int
    members: list[Subspace]
    alpha: int
    dim: int
    strategy: str | None = None
    seed: int | None = None
    complete: bool = True  # False when a search ran out of budget
    evaluations: int = 0

    @property
    def ctx(self) -> FieldCtx:
        return self.members[0].ctx

    @property
    def k(self) -> int:
        return max((m.k for m in self.members), default=0)

    def __len__(self) -> int:
        return len(self.members)

    def check(self) -> CoverCheck:
        return alpha_cover_check(self.members, self.alpha, self.dim)


# -- the 51-subspace code in F_2^6 -------------------------------------------------

_GF16_POLY = (1, 1, 0, 0, 1)  # x^4 + x + 1


def paper51_code() -> CoverCode:
    """51 two-dimensional subspaces of F_2^6 in which any three span >= 4 dimensions.

    Vectors are written ``a b beta^i``: two bits followed by the coordinates of
    beta^i in GF(16), where beta is a root of x^4 + x + 1.
    """
    base = gf(2)
    F = extension(base, _GF16_POLY)

    def vec(a: int, b: int, i: int) -> tuple[int, ...]:
        return (a, b, *F.digits(F.exp(i)))

    pairs = []
    for shift in (1, 2, -1):
        pairs += [(vec(0, 1, i), vec(1, 0, i + shift)) for i in range(15)]
    pairs += [(vec(0, 0, i), vec(0, 0, i + 5)) for i in range(5)]
    pairs.append(((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0)))
    members = [span(base, p, 6) for p in pairs]
    return CoverCode(6, 2, members, alpha=3, dim=4)


# -- search ------------------------------------------------------------------------


class BudgetExhausted(Exception):
    pass


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted


class _Growing:
    """A cover code under construction with incremental admissibility tests."""

    def __init__(self, candidates: Sequence[Subspace], alpha: int, dim: int, budget: _Budget):
        self.spans = _Spans(candidates)
        self.alpha, self.dim = alpha, dim
        self.chosen: list[int] = []
        # reduced spans of (alpha-1)-subsets of chosen that fall short of dim
        self.short: list = []
        self.budget = budget

    def admissible(self, c: int) -> bool:
        sp = self.spans
        if self.alpha == 1:
            return sp.members[c].k >= self.dim
        for red in self.short:
            self.budget.spend()
            if sp.dim_with(red, c) < self.dim:
                return False
        return True

    def add(self, c: int) -> None:
        sp = self.spans
        if self.alpha > 1:
            for rest in itertools.combinations(self.chosen, self.alpha - 2):
                red = sp.reduced((*rest, c))
                if sp.dim(red) < self.dim:
                    self.short.append(red)
        self.chosen.append(c)

    def snapshot(self):
        return len(self.chosen), len(self.short)

    def restore(self, snap) -> None:
        n, s = snap
        del self.chosen[n:]
        del self.short[s:]


def greedy_cover_search(n: int, k: int, alpha: int, dim: int, q: int, strategy: str = "greedy",
                        budget: int | None = None, seed: int = 0, *,
                        cap: int = DEFAULT_ENUM_CAP) -> CoverCode:
    """Search G_q(n, k) for a large alpha-cover code with threshold ``dim``.

    ``greedy`` scans the Grassmannian in enumeration order and keeps every
    candidate that preserves the property; ``randomized`` does the same on a
    seeded shuffle; ``exhaustive`` is a branch and bound for the maximum size
    (tiny parameters only).  ``budget`` caps the number of span evaluations;
    when it runs out the best code so far is returned with ``complete=False``.
    """
    candidates = list(enumerate_grassmannian(n, k, q, cap=cap))
    seed &= (1 << 64) - 1
    if strategy == "randomized":
        random.Random(seed).shuffle(candidates)
    elif strategy not in ("greedy", "exhaustive"):
        raise SubspaceError(f"unknown strategy {strategy!r}")
    tracker = _Budget(budget)
    grow = _Growing(candidates, alpha, dim, tracker)
    complete = True

    if strategy == "exhaustive":
        best: list[int] = []

        def branch(start: int) -> None:
            nonlocal best
            if len(grow.chosen) > len(best):
                best = list(grow.chosen)
            for c in range(start, len(candidates)):
                if len(grow.chosen) + len(candidates) - c <= len(best):
                    return
                if grow.admissible(c):
                    snap = grow.snapshot()
                    grow.add(c)
                    branch(c + 1)
                    grow.restore(snap)

        try:
            branch(0)
        except BudgetExhausted:
            complete = False
        chosen = best
    else:
        try:
            for c in range(len(candidates)):
                if grow.admissible(c):
                    grow.add(c)
        except BudgetExhausted:
            complete = False
        chosen = grow.chosen

    return CoverCode(n, q, [candidates[i] for i in chosen], alpha, dim, strategy=strategy,
                     seed=seed if strategy == "randomized" else None, complete=complete,
                     evaluations=tracker.used)


# -- certificate files ----------------------------------------------------------------


def write_certificate(code: CoverCode) -> str:
    """Header ``n k q alpha D count`` then one canonical basis matrix per member."""
    lines = []
    if code.strategy:
        note = f"# strategy {code.strategy}"
        if code.seed is not None:
            note += f" seed {code.seed}"
        if not code.complete:
            note += " budget-exhausted"
        lines.append(note)
    lines.append(f"{code.n} {code.k} {code.q} {code.alpha} {code.dim} {len(code)}")
    out = "\n".join(lines) + "\n"
    return out + "".join(m.basis.to_text() for m in code.members)


def read_certificate(text: str) -> CoverCode:
    """Parse a certificate; member bases are re-canonicalized, nothing is trusted."""
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    tokens = iter(body.split())
    try:
        n, k, q, alpha, dim, count = (int(next(tokens)) for _ in range(6))
    except (StopIteration, ValueError):
        raise SubspaceError("malformed certificate header") from None
    ctx = gf(q)
    members = []
    for _ in range(count):
        m = Mat.from_tokens(ctx, tokens)
        if m.cols != n:
            raise SubspaceError(f"member has {m.cols} columns, expected {n}")
        members.append(subspace_from(m))
    if next(tokens, None) is not None:
        raise SubspaceError("trailing data after certificate")
    code = CoverCode(n, q, members, alpha, dim)
    if members and code.k != k:
        raise SubspaceError(f"header declares k={k} but members have dimension up to {code.k}")
    return code
