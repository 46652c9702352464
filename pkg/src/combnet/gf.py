"""Finite fields GF(p^m) with log/antilog table arithmetic.

Elements are plain integers ``0 .. q-1``.  For an extension field the integer
encodes the coefficient vector of the polynomial representative in base
``base.q``, with the coefficient of ``x^0`` as the least significant digit.
For ``field_ctx(2, 4)`` this is the usual bit-vector encoding, so the root
``x`` of ``x^4 + x + 1`` is ``2`` and ``x^4 = x + 1`` is ``3``.

Contexts are cached and immutable, so two calls with the same parameters
return the same object and element contexts can be compared by identity.
"""

from __future__ import annotations

import functools
import itertools
import operator
from typing import Callable, Iterator, Sequence

DEFAULT_TABLE_LIMIT = 1 << 20


class FieldError(ValueError):
    """Invalid field parameters or an illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` and p prime, or None."""
    if q < 2:
        return None
    p = prime_factors(q)
    if len(p) != 1:
        return None
    p = p[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def prime_powers(start: int = 2) -> Iterator[int]:
    """Prime powers ``>= start`` in increasing order: 2, 3, 4, 5, 7, 8, 9, ..."""
    n = max(start, 2)
    while True:
        if prime_power(n) is not None:
            yield n
        n += 1


# -- polynomials over a field context ---------------------------------------
#
# Polynomials are coefficient tuples, lowest degree first, over the raw
# integer elements of some FieldCtx.


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(ctx: FieldCtx, a: Sequence[int], b: Sequence[int], mod: Sequence[int]) -> list[int]:
    # mod is monic
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] = ctx.add(prod[i + j], ctx.mul(x, y))
    deg = len(mod) - 1
    for i in range(len(prod) - 1, deg - 1, -1):
        c = prod[i]
        if c == 0:
            continue
        for j in range(deg + 1):
            prod[i - deg + j] = ctx.sub(prod[i - deg + j], ctx.mul(c, mod[j]))
    return _poly_trim(prod[:deg])


def _poly_powmod_x(ctx: FieldCtx, e: int, mod: Sequence[int]) -> list[int]:
    result = [1]
    base = _poly_mulmod(ctx, [0, 1], [1], mod)
    while e:
        if e & 1:
            result = _poly_mulmod(ctx, result, base, mod)
        base = _poly_mulmod(ctx, base, base, mod)
        e >>= 1
    return result


def is_primitive_poly(base: FieldCtx, coeffs: Sequence[int]) -> bool:
    """True iff the monic ``coeffs`` (low degree first) is primitive over ``base``.

    x has multiplicative order exactly ``base.q**deg - 1`` modulo the
    polynomial; that forces the quotient ring to be a field.
    """
    coeffs = list(coeffs)
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] != 1 or coeffs[0] == 0:
        return False
    if any(not 0 <= c < base.q for c in coeffs):
        return False
    order = base.q**deg - 1
    if _poly_powmod_x(base, order, coeffs) != [1]:
        return False
    return all(_poly_powmod_x(base, order // f, coeffs) != [1] for f in prime_factors(order))


def default_primitive_poly(base: FieldCtx, degree: int) -> tuple[int, ...]:
    """Lexicographically smallest primitive monic polynomial (low degree first)."""
    for low in itertools.product(range(base.q), repeat=degree):
        cand = (*low, 1)
        if is_primitive_poly(base, cand):
            return cand
    raise FieldError(f"no primitive polynomial of degree {degree} over GF({base.q})")  # pragma: no cover


def poly_str(coeffs: Sequence[int]) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if c != 1:
            mono = str(c) if i == 0 else f"{c}*{mono}"
        terms.append(mono)
    return " + ".join(terms) or "0"


# -- contexts ----------------------------------------------------------------


class FieldCtx:
    """Arithmetic context for GF(q) on integer-encoded elements.

    ``base`` is None for a prime field; otherwise the field is
    ``base[x] / poly(x)`` with ``poly`` primitive over ``base``.  Use
    :func:`field_ctx`, :func:`gf` or :func:`extension` rather than the
    constructor so that contexts are shared.
    """

    def __init__(self, p: int, base: FieldCtx | None, poly: tuple[int, ...], limit: int):
        self.p = p
        self.base = base
        self.degree = len(poly) - 1
        self.m = self.degree if base is None else base.m * self.degree
        self.q = p if base is None else base.q**self.degree
        if self.q > limit:
            raise FieldError(f"field order {self.q} exceeds table limit {limit}")
        self.poly = poly
        n = self.q - 1
        self.order = n

        if base is None:
            if p == 2:
                self.add = self.sub = operator.xor
                self.mul = operator.and_
            else:
                self.add = lambda a, b: (a + b) % p
                self.sub = lambda a, b: (a - b) % p
                self.mul = lambda a, b: a * b % p
            if not is_primitive_poly(self, poly):
                raise FieldError(f"{poly_str(poly)} is not primitive over GF({p})")
            root = (-poly[0]) % p
            exp = [1] * n
            for i in range(1, n):
                exp[i] = exp[i - 1] * root % p
        else:
            if not is_primitive_poly(base, poly):
                raise FieldError(f"{poly_str(poly)} is not primitive over GF({base.q})")
            exp = self._power_table(base, poly)

        log = [-1] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        if len(set(exp)) != n:
            raise FieldError("root does not generate the multiplicative group")  # pragma: no cover
        self._exp = exp + exp  # doubled so exp[i + j] needs no reduction
        self._log = log

        if base is not None:
            if p == 2:
                self.add = self.sub = operator.xor
            else:
                self._zech = self._zech_table()
                half = self.order // 2  # -1 = alpha^((q-1)/2) in odd characteristic
                exp_, log_ = self._exp, self._log
                self.neg = lambda a: exp_[log_[a] + half] if a else 0
                self.add = self._zech_add
                self.sub = lambda a, b: self._zech_add(a, self.neg(b))
            self.mul = self._log_mul

    @staticmethod
    def _power_table(base: FieldCtx, poly: tuple[int, ...]) -> list[int]:
        bq, deg = base.q, len(poly) - 1
        digits = [1] + [0] * (deg - 1)
        n = bq**deg - 1
        table = []
        for _ in range(n):
            table.append(sum(d * bq**i for i, d in enumerate(digits)))
            top = digits[-1]
            digits = [0] + digits[:-1]
            if top:
                digits = [base.sub(d, base.mul(top, c)) for d, c in zip(digits, poly)]
        return table

    def _zech_table(self) -> list[int]:
        # zech[k] = log(1 + alpha^k), or -1 when 1 + alpha^k = 0
        out = []
        for k in range(self.order):
            s = self._digitwise_add(1, self._exp[k])
            out.append(self._log[s] if s else -1)
        return out

    def _digitwise_add(self, a: int, b: int) -> int:
        bq, base = self.base.q, self.base
        out, mult = 0, 1
        for _ in range(self.degree):
            out += base.add(a % bq, b % bq) * mult
            a //= bq
            b //= bq
            mult *= bq
        return out

    def _zech_add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        i = self._log[a]
        z = self._zech[(self._log[b] - i) % self.order]
        if z < 0:
            return 0
        return self._exp[i + z]

    def _log_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    # -- raw integer arithmetic --------------------------------------------

    add: Callable[[int, int], int]
    sub: Callable[[int, int], int]
    mul: Callable[[int, int], int]

    def neg(self, a: int) -> int:
        return self.sub(0, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self._exp[(-self._log[a]) % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % self.order]

    def exp(self, i: int) -> int:
        """Integer encoding of alpha^i (i reduced mod q-1)."""
        return self._exp[i % self.order]

    def log(self, a: int) -> int:
        if a == 0:
            raise FieldError("logarithm of zero")
        return self._log[a]

    def digits(self, a: int) -> tuple[int, ...]:
        """Coefficients of ``a`` over the base field, lowest degree first."""
        if self.base is None:
            return (a,)
        bq = self.base.q
        return tuple((a // bq**i) % bq for i in range(self.degree))

    def from_digits(self, digits: Sequence[int]) -> int:
        if self.base is None:
            return digits[0]
        bq = self.base.q
        return sum(d * bq**i for i, d in enumerate(digits))

    # -- element API --------------------------------------------------------

    def __call__(self, value: int) -> FieldElement:
        if not 0 <= value < self.q:
            raise FieldError(f"{value} is not an element encoding of GF({self.q})")
        return FieldElement(self, value)

    def primitive_power(self, i: int) -> FieldElement:
        return FieldElement(self, self.exp(i))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, v) for v in range(self.q)]

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.q}) = GF({self.base.q})[x]/({poly_str(self.poly)})"

    def __reduce__(self):
        # contexts are singletons per parameters; unpickle through the cache
        if self.base is None:
            return (field_ctx, (self.p, 1))
        return (extension, (self.base, self.poly))


class FieldElement:
    """An element of a :class:`FieldCtx`; supports the usual operators."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldError(f"context mismatch: {self.ctx!r} vs {other.ctx!r}")
            return other.value
        if isinstance(other, int) and other in (0, 1):
            return other
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else FieldElement(self.ctx, self.ctx.div(self.value, b))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.value))

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.ctx.q}:{self.value}"

    def __str__(self):
        return str(self.value)


def _default_prime_poly(p: int) -> tuple[int, int]:
    # smallest p0 whose negation -p0 is a primitive root mod p
    if p == 2:
        return (1, 1)
    probe = FieldCtx.__new__(FieldCtx)
    probe.q = p
    probe.add = lambda a, b: (a + b) % p
    probe.sub = lambda a, b: (a - b) % p
    probe.mul = lambda a, b: a * b % p
    return next((i, 1) for i in range(1, p) if is_primitive_poly(probe, (i, 1)))


@functools.lru_cache(maxsize=None)
def _prime_field(p: int, poly: tuple[int, ...], limit: int) -> FieldCtx:
    return FieldCtx(p, None, poly, limit)


@functools.lru_cache(maxsize=None)
def _extension(base: FieldCtx, poly: tuple[int, ...], limit: int) -> FieldCtx:
    return FieldCtx(base.p, base, poly, limit)


def field_ctx(p: int, m: int = 1, poly: Sequence[int] | None = None, *, limit: int = DEFAULT_TABLE_LIMIT) -> FieldCtx:
    """Context for GF(p^m).

    ``poly`` lists the monic defining polynomial's coefficients over GF(p),
    lowest degree first (length m+1).  Without it the lexicographically
    smallest primitive polynomial is used.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    if p**m > limit:
        raise FieldError(f"field order {p}^{m} exceeds table limit {limit}")
    if poly is not None:
        poly = tuple(int(c) for c in poly)
        if len(poly) != m + 1 or poly[-1] != 1:
            raise FieldError(f"polynomial must be monic of degree {m}")
    if m == 1:
        return _prime_field(p, poly or _default_prime_poly(p), limit)
    base = _prime_field(p, _default_prime_poly(p), limit)
    return extension(base, poly if poly is not None else default_primitive_poly(base, m), limit=limit)


def extension(base: FieldCtx, poly: Sequence[int], *, limit: int = DEFAULT_TABLE_LIMIT) -> FieldCtx:
    """GF(base.q ** deg) built as ``base[x] / poly``; poly must be primitive.

    Over a prime base this is the same object :func:`field_ctx` returns.
    """
    poly = tuple(int(c) for c in poly)
    if base.q ** (len(poly) - 1) > limit:
        raise FieldError(f"field order {base.q}^{len(poly) - 1} exceeds table limit {limit}")
    return _extension(base, poly, limit)


def gf(q: int, *, limit: int = DEFAULT_TABLE_LIMIT) -> FieldCtx:
    """Context for GF(q) with the default polynomial."""
    pm = prime_power(q)
    if pm is None:
        raise FieldError(f"{q} is not a prime power")
    return field_ctx(*pm, limit=limit)


# -- functional element API ------------------------------------------------------


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def pow(a: FieldElement, e: int) -> FieldElement:  # noqa: A001 - mirrors the operator
    return a**e


def primitive_power(ctx: FieldCtx, i: int) -> FieldElement:
    """alpha^i for the context's primitive element; i is reduced mod q-1."""
    return ctx.primitive_power(i)
