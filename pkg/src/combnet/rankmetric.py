"""Rank-metric codes used as coding coefficients.

Two families:

* the companion-matrix code ``{0, I, C, C^2, ..., C^(q^t - 2)}``, an MRD code of
  full rank distance t that is isomorphic to GF(q^t) under ``alpha^i -> C^i``;
* Gabidulin codes built from linearized polynomials
  ``f(x) = sum_i m_i x^(q^i)`` with ``m_i`` in GF(q^n), written as n x n
  matrices over GF(q) in the polynomial basis ``1, alpha, ..., alpha^(n-1)``.
  Row j of a codeword holds the coordinates of ``f(alpha^j)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .gf import FieldCtx, FieldError, default_primitive_poly, extension, gf, is_primitive_poly
from .linalg import LinAlgError, Mat, rank

DEFAULT_SIZE_LIMIT = 1 << 16


class CodeError(ValueError):
    """Parameters outside the supported range."""


def companion_matrix(base: FieldCtx, poly: Sequence[int]) -> Mat:
    """t x t companion matrix: ones on the superdiagonal, last row ``-p_0 .. -p_{t-1}``."""
    poly = tuple(poly)
    if not is_primitive_poly(base, poly):
        raise CodeError(f"polynomial {poly} is not primitive over GF({base.q})")
    t = len(poly) - 1
    rows = [[int(j == i + 1) for j in range(t)] for i in range(t - 1)]
    rows.append([base.neg(c) for c in poly[:-1]])
    return Mat(base, rows, t)


@dataclass(frozen=True, eq=False)
class CompanionCode:
    base: FieldCtx
    t: int
    poly: tuple[int, ...]
    C: Mat
    members: tuple[Mat, ...]
    field: FieldCtx  # GF(q^t) defined by the same polynomial

    def __len__(self) -> int:
        return len(self.members)

    def __getitem__(self, i: int) -> Mat:
        return self.members[i]

    def __iter__(self) -> Iterator[Mat]:
        return iter(self.members)

    def power(self, k: int) -> Mat:
        """C^k with k reduced mod q^t - 1."""
        return self.members[1 + k % (self.base.q**self.t - 1)]

    def element_matrix(self, a: int) -> Mat:
        """Image of the field element ``a`` (encoded in :attr:`field`) under alpha^i -> C^i."""
        if a == 0:
            return self.members[0]
        return self.power(self.field.log(a))

    def member_element(self, i: int) -> int:
        """Field element matching member i: 0 for i = 0, else alpha^(i-1)."""
        return 0 if i == 0 else self.field.exp(i - 1)


def companion_code(q: int, t: int, poly: Sequence[int] | None = None, *,
                   limit: int = DEFAULT_SIZE_LIMIT) -> CompanionCode:
    """Ordered members ``0, I, C, C^2, ..., C^(q^t - 2)`` of the companion code over GF(q)."""
    if t < 1:
        raise CodeError("t must be >= 1")
    if q**t > limit:
        raise CodeError(f"code size {q}^{t} exceeds limit {limit}")
    base = gf(q)
    poly = tuple(poly) if poly is not None else default_primitive_poly(base, t)
    C = companion_matrix(base, poly)
    members = [Mat.zeros(base, t, t)]
    cur = Mat.identity(base, t)
    for _ in range(q**t - 1):
        members.append(cur)
        cur = cur @ C
    if t == 1 and base.base is None and poly == base.poly:
        fld = base
    else:
        try:
            fld = extension(base, poly)
        except FieldError as exc:  # pragma: no cover - poly already checked primitive
            raise CodeError(str(exc)) from exc
    return CompanionCode(base, t, poly, C, tuple(members), fld)


@dataclass(frozen=True, eq=False)
class GabidulinCode:
    """MRD code of n x n matrices over GF(q) with minimum rank distance ``delta``."""

    q: int
    n: int
    delta: int
    base: FieldCtx
    field: FieldCtx  # GF(q^n) over base
    k: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "k", self.n - self.delta + 1)

    @property
    def size(self) -> int:
        return self.q ** (self.n * self.k)

    def __len__(self) -> int:
        return self.size

    def message(self, index: int) -> tuple[int, ...]:
        """Digits of ``index`` in base q^n, least significant first."""
        if not 0 <= index < self.size:
            raise CodeError(f"codeword index {index} outside [0, {self.size})")
        Q = self.field.q
        return tuple((index // Q**i) % Q for i in range(self.k))

    def evaluate(self, msg: Sequence[int], x: int) -> int:
        """f(x) = sum_i msg[i] * x^(q^i) in GF(q^n)."""
        F = self.field
        if x == 0:
            return 0
        lx = F.log(x)
        acc = 0
        for i, m in enumerate(msg):
            if m:
                acc = F.add(acc, F.mul(m, F.exp(lx * self.q**i)))
        return acc

    def codeword(self, index: int) -> Mat:
        msg = self.message(index)
        F = self.field
        if self.n == 1:
            return Mat(self.base, [[self.evaluate(msg, 1)]], 1)
        rows = [F.digits(self.evaluate(msg, F.exp(j))) for j in range(self.n)]
        return Mat(self.base, rows, self.n)

    def codewords(self, count: int | None = None) -> Iterator[Mat]:
        for i in range(self.size if count is None else min(count, self.size)):
            yield self.codeword(i)


def gabidulin_code(q: int, n: int, delta: int, *, limit: int = 1 << 20) -> GabidulinCode:
    """Gabidulin code MRD[n x n, delta] over GF(q); codewords are generated on demand."""
    if not 1 <= delta <= n:
        raise CodeError(f"need 1 <= delta <= n, got delta={delta}, n={n}")
    if q**n > limit:
        raise CodeError(f"GF({q}^{n}) exceeds table limit {limit}")
    base = gf(q)
    fld = extension(base, default_primitive_poly(base, n)) if n > 1 else base
    return GabidulinCode(q, n, delta, base, fld)


def gabidulin_codeword(code: GabidulinCode, index: int) -> Mat:
    return code.codeword(index)


def min_rank_distance(codewords: Iterable[Mat], *, linear: bool = False) -> int:
    """Minimum of ``rank(A - B)`` over distinct pairs.

    With ``linear=True`` the list is taken to be a linear code, so the minimum
    rank over nonzero codewords is returned instead of scanning pairs.
    """
    words = list(codewords)
    if len(words) < 2:
        raise CodeError("need at least two codewords")
    shape = words[0].shape
    if any(w.shape != shape for w in words):
        raise LinAlgError("codeword shape mismatch")
    if linear:
        return min(rank(w) for w in words if not w.is_zero())
    return min(rank(a - b) for a, b in itertools.combinations(words, 2))


def rank_profile(codewords: Iterable[Mat]) -> Counter:
    """Census of codeword ranks, e.g. for comparing two codes with the same parameters."""
    return Counter(rank(w) for w in codewords)
