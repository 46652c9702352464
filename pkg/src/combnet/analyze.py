"""Field-size gap between vector solutions and the best scalar linear solutions.

For the alpha = 2 family the achievable r of the vector solution follows one
of four closed forms.  Exact scalar thresholds are known for four families:

* ``combination``: N_{h,r,h}, r <= q_s + 1 (q_s + 2 for h = 3, q_s even)
* ``(1,2)-N4``:    r <= (q_s^2 + 1)(q_s^2 + q_s + 1)
* ``(l-1,l)-N2l``: r <= [2l choose l]_{q_s}
* ``(1,1)-N3``:    r <= 2(q_s^2 + q_s + 1)

Other networks get no scalar field size; their rows are marked as
order-of-magnitude only.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .gf import prime_power
from .network import Classification, classify_params
from .subspace import gaussian_binomial

FAMILIES = ("combination", "(1,2)-N4", "(l-1,l)-N2l", "(1,1)-N3")
ORDER_ONLY = "order-of-magnitude only"


class AnalyzeError(ValueError):
    pass


# -- vector side ---------------------------------------------------------------------


def theorem_case(h: int, ell: int, eps: int) -> int:
    """Which closed form (1-4) gives r for the alpha = 2 network; first matching case wins."""
    if classify_params(h, ell, eps, 2) is not Classification.NORMAL:
        raise AnalyzeError(f"({eps},{ell})-N_{{{h},r,{2 * ell + eps}}} is not a normal alpha=2 network")
    if h - ell <= ell:
        return 1 if eps == 0 else 2
    return 3 if 2 * ell - h + eps == 0 else 4


def vector_r_bound(h: int, ell: int, eps: int, q: int, t: int) -> int:
    """Number of middle nodes served by the rank-metric vector solution of dimension t over GF(q)."""
    if t < 1 or prime_power(q) is None:
        raise AnalyzeError(f"need a prime power q and t >= 1, got q={q}, t={t}")
    case = theorem_case(h, ell, eps)
    if case == 1:
        e = ell * t
    elif case == 2:
        e = ell * t * (eps * t + 1)
    elif case == 3:
        e = (h - ell) * t
    else:
        e = (h - ell) * t * (2 * ell * t - h * t + eps * t + 1)
    return q**e


def scalar_order(h: int, ell: int, eps: int) -> str:
    """The asymptotic scalar field size the closed forms predict, as text."""
    case = theorem_case(h, ell, eps)
    if case in (1, 3):
        return "q^t"
    d = eps if case == 2 else 2 * ell - h + eps
    return f"q^({d}t^2/{d + 1} + o(t))"


# -- scalar side ---------------------------------------------------------------------


def _family_args(family: str, h: int | None, ell: int | None) -> None:
    if family not in FAMILIES:
        raise AnalyzeError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if family == "combination" and (h is None or h < 2):
        raise AnalyzeError("combination family needs h >= 2")
    if family == "(l-1,l)-N2l" and (ell is None or ell < 2):
        raise AnalyzeError("(l-1,l)-N2l family needs ell >= 2")


def scalar_max_r(family: str, q_s: int, *, h: int | None = None, ell: int | None = None) -> int:
    """Largest r with a scalar linear solution over GF(q_s)."""
    _family_args(family, h, ell)
    if family == "combination":
        return q_s + 2 if (h == 3 and q_s % 2 == 0) else q_s + 1
    if family == "(1,2)-N4":
        return (q_s**2 + 1) * (q_s**2 + q_s + 1)
    if family == "(l-1,l)-N2l":
        return gaussian_binomial(2 * ell, ell, q_s)
    return 2 * (q_s**2 + q_s + 1)


def previous_prime_power(q: int) -> int | None:
    for c in range(q - 1, 1, -1):
        if prime_power(c):
            return c
    return None


def min_scalar_field(family: str, r: int, *, h: int | None = None, ell: int | None = None) -> int:
    """Smallest prime power q_s whose scalar bound admits r middle nodes.

    The bounds grow with q_s, so a doubling search finds the first integer
    that passes and prime powers are then tried upward from there.
    """
    _family_args(family, h, ell)
    if family == "combination" and r < h:
        raise AnalyzeError(f"combination network needs r >= h, got r={r}, h={h}")

    def fits(x: int) -> bool:
        return scalar_max_r(family, x, h=h, ell=ell) >= r

    hi = 2
    while not fits(hi):
        hi *= 2
    lo = hi // 2 + 1 if hi > 2 else 2
    while lo < hi:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid + 1
    q = lo
    while not (prime_power(q) and fits(q)):
        q += 1
    return q


# -- gap table -------------------------------------------------------------------------


@dataclass(frozen=True)
class GapReport:
    h: int
    ell: int
    eps: int
    q: int
    t: int
    r: int
    case: int
    family: str | None
    qs_min: int | None
    alpha: int = 2

    @property
    def exponent(self) -> Fraction | None:
        """Fraction standing in for log_q(q_s / q^t) / t^2; None without an exact q_s.

        Only exact when q_s is a power of q; otherwise see :attr:`exponent_text`.
        """
        if self.qs_min is None:
            return None
        k, rest = 0, self.qs_min
        while rest % self.q == 0:
            rest //= self.q
            k += 1
        if rest != 1:
            return None
        return Fraction(k - self.t, self.t * self.t)

    @property
    def exponent_value(self) -> float | None:
        if self.qs_min is None:
            return None
        return (math.log(self.qs_min, self.q) - self.t) / self.t**2

    @property
    def exponent_text(self) -> str:
        if self.qs_min is None:
            return ORDER_ONLY
        exact = f"(log_{self.q}({self.qs_min}) - {self.t})/{self.t * self.t}"
        frac = self.exponent
        if frac is not None:
            return f"{exact} = {frac}"
        return f"{exact} ~ {self.exponent_value:.4f} (approx)"

    def scalar_bound_holds(self) -> bool:
        """Bound met at qs_min and missed at the previous prime power."""
        if self.qs_min is None:
            return False
        kw = dict(h=self.h, ell=self.ell)
        here = scalar_max_r(self.family, self.qs_min, **kw) >= self.r
        prev = previous_prime_power(self.qs_min)
        below = prev is None or scalar_max_r(self.family, prev, **kw) < self.r
        return here and below


def network_family(h: int, ell: int, eps: int, alpha: int = 2) -> str | None:
    """The exact-bound family a network belongs to, if any."""
    if alpha == 2 and ell == 1 and eps == 0 and h == 2:
        return "combination"
    if alpha == 2 and h == 2 * ell and eps == ell - 1 and ell >= 2:
        return "(1,2)-N4" if ell == 2 else "(l-1,l)-N2l"
    if alpha == 3 and h == 3 and ell == 1 and eps == 1:
        return "(1,1)-N3"
    return None


def gap_networks(h: int) -> list[tuple[int, int]]:
    """(eps, ell) choices with the largest gap for h messages."""
    if h < 2:
        raise AnalyzeError("need h >= 2")
    if h % 2 == 0:
        ell = h // 2
        return [(ell - 1, ell)]
    up, down = (h + 1) // 2, (h - 1) // 2
    out = [(up - 2, up)]
    if down >= 1:
        out.append((h - down - 1, down))  # eps = h - ell - 1
    return out


def gap_report(h: int, ell: int, eps: int, q: int, t: int) -> GapReport:
    r = vector_r_bound(h, ell, eps, q, t)
    family = network_family(h, ell, eps)
    qs = None
    if family is not None:
        qs = min_scalar_field(family, r, h=h, ell=ell)
    return GapReport(h, ell, eps, q, t, r, theorem_case(h, ell, eps), family, qs)


def gap_table(h_range: Iterable[int], q: int, t_range: Iterable[int]) -> list[GapReport]:
    t_values = list(t_range)
    rows = []
    for h in h_range:
        for eps, ell in gap_networks(h):
            for t in t_values:
                rows.append(gap_report(h, ell, eps, q, t))
    return rows


CSV_COLUMNS = ("h", "ell", "eps", "q", "t", "r", "qs_min", "gap_exponent")


def table_csv(rows: Sequence[GapReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for g in rows:
        exp = "" if g.qs_min is None else (str(g.exponent) if g.exponent is not None else f"{g.exponent_value:.6f}")
        w.writerow([g.h, g.ell, g.eps, g.q, g.t, g.r, "" if g.qs_min is None else g.qs_min, exp])
    return buf.getvalue()


def table_text(rows: Sequence[GapReport]) -> str:
    head = ("h", "ell", "eps", "q", "t", "case", "r", "qs_min", "gap exponent")
    body = [(g.h, g.ell, g.eps, g.q, g.t, g.case, g.r, "-" if g.qs_min is None else g.qs_min, g.exponent_text)
            for g in rows]
    cells = [tuple(map(str, row)) for row in [head, *body]]
    widths = [max(len(c[i]) for c in cells) for i in range(len(head))]
    lines = ["  ".join(c.rjust(w) if i < len(head) - 1 else c for i, (c, w) in enumerate(zip(row, widths)))
             for row in cells]
    return "\n".join(lines) + "\n"
