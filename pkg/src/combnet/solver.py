"""Constructive network codes for generalized combination networks.

An :class:`Assignment` stores, for every middle node ``i``, the ``(ell*t) x (h*t)``
matrix ``G_i`` whose rows are the global coding vectors of the node's parallel
links, and for every receiver the ``(eps*t) x (h*t)`` matrix ``P`` carried by its
direct links.  Scalar solutions are the case ``t = 1`` over ``GF(q_s)``.

Direct-link matrices are completions: standard basis rows added greedily
until the receiver's stack reaches full rank (see :func:`completion_rows`).
Builders compute them on demand; assignments read from a file carry them
explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .gf import FieldCtx, gf, prime_power
from .linalg import Mat, gf2_reduce, hstack, vstack
from .network import NetworkError, NetworkSpec, parse_header, write_network
from .rankmetric import CompanionCode, companion_code, gabidulin_code
from .subspace import CoverCode, alpha_cover_check, enumerate_grassmannian, gaussian_binomial


class SolverError(ValueError):
    """Parameters outside a construction's range, or a malformed assignment."""


# -- completion rows -------------------------------------------------------------


def _reduce(ctx: FieldCtx, basis: list[tuple[int, list[int]]], v: list[int]) -> list[int]:
    sub, mul = ctx.sub, ctx.mul
    for pc, row in basis:
        f = v[pc]
        if f:
            v = [sub(a, mul(f, b)) if b else a for a, b in zip(v, row)]
    return v


def _insert(ctx: FieldCtx, basis: list[tuple[int, list[int]]], v: list[int]) -> bool:
    v = _reduce(ctx, basis, v)
    pc = next((j for j, x in enumerate(v) if x), None)
    if pc is None:
        return False
    s = ctx.inv(v[pc])
    basis.append((pc, [ctx.mul(s, x) for x in v]))
    return True


def completion_rows(S: Mat, target: int, count: int, strict: bool = True) -> Mat:
    """``count`` rows of standard basis vectors (then zero rows) lifting ``rank(S)`` to ``target``.

    Rows ``e_0, e_1, ...`` are tried in order and kept only when they raise the
    rank of the running stack; once the rank is ``target`` the rest are zero.
    With ``strict=False`` a stack that cannot reach ``target`` still gets its
    best completion instead of an error, so verification can report the deficit.
    """
    ctx, c = S.ctx, S.cols
    if target > c:
        raise SolverError(f"target rank {target} exceeds {c} columns")
    chosen: list[int] = []
    if ctx.q == 2:
        basis = gf2_reduce(S.packed())
        have = len(basis)
        if strict and have < target - count:
            raise SolverError(f"rank {have} cannot reach {target} with {count} extra rows")
        for j in range(c):
            if have >= target or len(chosen) == count:
                break
            v = 1 << (c - 1 - j)
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
                chosen.append(j)
                have += 1
    else:
        basis: list[tuple[int, list[int]]] = []
        for row in S.data:
            _insert(ctx, basis, list(row))
        have = len(basis)
        if strict and have < target - count:
            raise SolverError(f"rank {have} cannot reach {target} with {count} extra rows")
        for j in range(c):
            if have >= target or len(chosen) == count:
                break
            e = [0] * c
            e[j] = 1
            if _insert(ctx, basis, e):
                chosen.append(j)
                have += 1
    rows = [tuple(int(k == j) for k in range(c)) for j in chosen]
    rows += [(0,) * c] * (count - len(chosen))
    return Mat._raw(ctx, tuple(rows), c)


# -- assignments -------------------------------------------------------------------


@dataclass(eq=False)
class Assignment:
    spec: NetworkSpec
    ctx: FieldCtx
    t: int
    nodes: tuple[Mat, ...]
    direct: Mapping[int, Mat] | None = None  # explicit P by receiver index; None = compute

    def __post_init__(self):
        spec, t = self.spec, self.t
        if len(self.nodes) != spec.r:
            raise SolverError(f"{len(self.nodes)} node matrices for r={spec.r}")
        shape = (spec.ell * t, spec.h * t)
        for i, g in enumerate(self.nodes):
            if g.ctx is not self.ctx:
                raise SolverError(f"node {i} is over a different field")
            if g.shape != shape:
                raise SolverError(f"node {i} has shape {g.shape}, expected {shape}")
        if self.direct is not None:
            pshape = (spec.eps * t, spec.h * t)
            for j, p in self.direct.items():
                if p.ctx is not self.ctx or p.shape != pshape:
                    raise SolverError(f"receiver {j}: direct matrix must be {pshape} over the assignment field")

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def is_scalar(self) -> bool:
        return self.t == 1

    def direct_matrix(self, receiver: int | Sequence[int]) -> Mat | None:
        """P for a receiver given by index or node subset; None when eps = 0."""
        spec = self.spec
        if isinstance(receiver, int):
            index, nodes = receiver, spec.receiver_at(receiver)
        else:
            nodes = tuple(sorted(receiver))
            index = spec.receiver_index(nodes)
        if spec.eps == 0:
            return None
        if self.direct is not None:
            try:
                return self.direct[index]
            except KeyError:
                raise SolverError(f"assignment has no direct matrix for receiver {index}") from None
        stack = vstack([self.nodes[i] for i in nodes])
        return completion_rows(stack, spec.h * self.t, spec.eps * self.t, strict=False)

    def materialize(self) -> Assignment:
        """Copy with every direct matrix computed and stored."""
        if self.spec.eps == 0:
            return Assignment(self.spec, self.ctx, self.t, self.nodes, None)
        direct = {j: self.direct_matrix(j) for j in range(self.spec.n_receivers)}
        return Assignment(self.spec, self.ctx, self.t, self.nodes, direct)


def _spec(h: int, r: int, ell: int, eps: int, alpha: int, q: int, t: int) -> NetworkSpec:
    try:
        return NetworkSpec(h, r, ell, eps, alpha, q, t)
    except NetworkError as exc:
        raise SolverError(str(exc)) from exc


def _need_prime_power(q: int, what: str = "q") -> None:
    if prime_power(q) is None:
        raise SolverError(f"{what}={q} is not a prime power")


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


# -- scalar solutions --------------------------------------------------------------


def mds_threshold(h: int, r: int) -> int:
    """q*: r - 2 when h = 3 and r - 2 is a power of two, else r - 1."""
    return r - 2 if h == 3 and _is_power_of_two(r - 2) else r - 1


def _mds_columns(F: FieldCtx, h: int, r: int) -> list[tuple[int, ...]]:
    """Extended Reed-Solomon columns in node order, as tuples of length h."""
    q = F.q
    elems = [0] + [F.exp(k) for k in range(q - 1)]
    unit = lambda j: tuple(int(i == j) for i in range(h))  # noqa: E731
    if r == q + 2:
        n_eval = q
        tail = [unit(h - 1), unit(1)]
    else:
        n_eval = r - 1
        tail = [unit(h - 1)]
    cols = [(1,) + tuple(F.pow(a, j) if a else 0 for j in range(1, h)) for a in elems[:n_eval]]
    return cols + tail


def scalar_mds_solution(h: int, r: int, q_s: int) -> Assignment:
    """Scalar solution of N_{h,r,h}: node i sends (1, a_i, ..., a_i^(h-1)) . x.

    Evaluation points run 0, 1, alpha, alpha^2, ...; the last node carries x_h,
    and for h = 3, r = q_s + 2 with q_s even the final two nodes carry x_3, x_2.
    """
    _need_prime_power(q_s, "q_s")
    if h < 2:
        raise SolverError("need h >= 2")
    spec = _spec(h, r, 1, 0, h, q_s, 1)
    limit = q_s + 2 if (h == 3 and q_s % 2 == 0) else q_s + 1
    if r > limit:
        raise SolverError(f"q_s={q_s} is below q*={mds_threshold(h, r)} for N_{{{h},{r},{h}}}")
    F = gf(q_s)
    nodes = tuple(Mat._raw(F, (c,), h) for c in _mds_columns(F, h, r))
    return Assignment(spec, F, 1, nodes)


def scalar_blocks_solution(ell: int, q_s: int, r: int) -> Assignment:
    """Scalar solution of (ell-1, ell)-N_{2ell, r, 3ell-1}: node i spans the i-th ell-subspace of F^(2ell)."""
    _need_prime_power(q_s, "q_s")
    if ell < 2:
        raise SolverError("need ell >= 2")
    bound = gaussian_binomial(2 * ell, ell, q_s)
    if r > bound:
        raise SolverError(f"r={r} exceeds [{2 * ell} choose {ell}]_{q_s} = {bound}")
    spec = _spec(2 * ell, r, ell, ell - 1, 2, q_s, 1)
    F = gf(q_s)
    nodes = []
    for sub in enumerate_grassmannian(2 * ell, ell, F, cap=max(bound, 1)):
        if len(nodes) == r:
            break
        nodes.append(sub.basis)
    return Assignment(spec, F, 1, tuple(nodes))


def scalar_3msg_solution(r: int, q_s: int) -> Assignment:
    """Scalar solution of (1,1)-N_{3,r,4}: each point of PG(2, q_s) used by at most two nodes."""
    _need_prime_power(q_s, "q_s")
    points = [s.basis for s in enumerate_grassmannian(3, 1, q_s)]
    bound = 2 * len(points)
    if r > bound:
        raise SolverError(f"r={r} exceeds 2(q_s^2+q_s+1) = {bound}")
    spec = _spec(3, r, 1, 1, 3, q_s, 1)
    F = points[0].ctx
    nodes = tuple(points[i % len(points)] for i in range(r))
    return Assignment(spec, F, 1, nodes)


# -- vector solutions --------------------------------------------------------------


def vector_construction1(h: int, q: int, t: int, r: int) -> Assignment:
    """Companion-matrix solution of N_{h,r,h}: node i sends [I | C_i | ... | C_i^(h-1)] . x.

    The last node carries x_h.  For h = 3 and q^t even, r = q^t + 2 is also
    accepted: the second to last node carries x_3 and the last x_2.
    """
    _need_prime_power(q)
    if h < 2 or t < 1:
        raise SolverError("need h >= 2 and t >= 1")
    Q = q**t
    limit = Q + 2 if (h == 3 and Q % 2 == 0) else Q + 1
    if r > limit:
        raise SolverError(f"r={r} exceeds q^t + 1 = {Q + 1}" + (" (q^t + 2 needs h = 3, q^t even)" if r == Q + 2 else ""))
    spec = _spec(h, r, 1, 0, h, q, t)
    code = companion_code(q, t, limit=max(Q, 1 << 16))
    base = code.base
    n_eval = Q if r == Q + 2 else r - 1
    nodes = [hstack([code[i] ** j for j in range(h)]) for i in range(n_eval)]
    zero, eye = Mat.zeros(base, t, t), Mat.identity(base, t)
    tails = [h - 1] if r != Q + 2 else [h - 1, 1]
    for k in tails:
        nodes.append(hstack([eye if j == k else zero for j in range(h)]))
    return Assignment(spec, base, t, tuple(nodes))


def expand_scalar(a: Assignment, code: CompanionCode) -> Assignment:
    """Replace every entry of a scalar assignment over GF(q^t) by its companion-code matrix."""
    if not a.is_scalar or a.ctx is not code.field:
        raise SolverError("assignment must be scalar over the companion code's field")
    t = code.t

    def lift(m: Mat) -> Mat:
        if m.rows == 0:
            return Mat.zeros(code.base, 0, m.cols * t)
        return vstack([hstack([code.element_matrix(v) for v in row]) for row in m.data])

    spec = a.spec
    vspec = _spec(spec.h, spec.r, spec.ell, spec.eps, spec.alpha, code.base.q, t)
    direct = None
    if a.direct is not None:
        direct = {j: lift(p) for j, p in a.direct.items()}
    return Assignment(vspec, code.base, t, tuple(lift(g) for g in a.nodes), direct)


def _mrd_nodes(q: int, n: int, delta: int, r: int) -> tuple[FieldCtx, list[Mat]]:
    code = gabidulin_code(q, n, delta)
    eye = Mat.identity(code.base, n)
    return code.base, [hstack([eye, code.codeword(i)]) for i in range(r)]


def vector_construction2(q: int, t: int, r: int, ell: int = 2) -> Assignment:
    """(1, ell)-N_{2ell, r, 2ell+1}: node i sends [I | C_i] . x, C_i from MRD[ell t x ell t, (ell-1)t].

    ``ell = 2`` is the (1,2)-N_{4,r,5} construction with r <= q^(2t(t+1)).
    Larger ``ell`` follows the same recipe; its bound is q^(ell t (t+1)).
    """
    _need_prime_power(q)
    if ell < 2 or t < 1:
        raise SolverError("need ell >= 2 and t >= 1")
    bound = q ** (ell * t * (t + 1))
    if r > bound:
        raise SolverError(f"r={r} exceeds q^(ell t (t+1)) = {bound}")
    spec = _spec(2 * ell, r, ell, 1, 2, q, t)
    base, nodes = _mrd_nodes(q, ell * t, (ell - 1) * t, r)
    return Assignment(spec, base, t, tuple(nodes))


def vector_construction3(ell: int, q: int, t: int, r: int) -> Assignment:
    """(ell-1, ell)-N_{2ell, r, 3ell-1}: node i sends [I | C_i] . x, C_i from MRD[ell t x ell t, t]."""
    _need_prime_power(q)
    if ell < 2:
        raise SolverError("need ell >= 2")
    if t < 1:
        raise SolverError("need t >= 1")
    bound = q ** (ell * (ell - 1) * t * t + ell * t)
    if r > bound:
        raise SolverError(f"r={r} exceeds q^(ell(ell-1)t^2 + ell t) = {bound}")
    spec = _spec(2 * ell, r, ell, ell - 1, 2, q, t)
    base, nodes = _mrd_nodes(q, ell * t, t, r)
    return Assignment(spec, base, t, tuple(nodes))


def vector_from_cover_code(spec: NetworkSpec, code: CoverCode, q: int, t: int) -> Assignment:
    """Node i carries a basis of member i, padded with zero rows to ell*t rows."""
    h, ell, eps, alpha, r = spec.h, spec.ell, spec.eps, spec.alpha, spec.r
    if not code.members:
        raise SolverError("empty cover code")
    if code.q != q or code.ctx.q != q:
        raise SolverError(f"code is over GF({code.q}), expected GF({q})")
    if code.n != h * t:
        raise SolverError(f"code ambient dimension {code.n} != h*t = {h * t}")
    if code.k > ell * t:
        raise SolverError(f"members of dimension {code.k} do not fit on {ell} links of dimension {t}")
    need = (h - eps) * t
    if code.alpha != alpha or code.dim != need:
        raise SolverError(f"code certifies (alpha={code.alpha}, D={code.dim}); network needs ({alpha}, {need})")
    if r > len(code):
        raise SolverError(f"r={r} exceeds code size {len(code)}")
    members = code.members[:r]
    check = alpha_cover_check(members, alpha, need)
    if not check:
        raise SolverError(f"cover property fails: members {check.violation} span only {check.dim} < {need}")
    ctx = code.ctx
    width = h * t
    nodes = []
    for m in members:
        b = m.basis
        pad = ell * t - b.rows
        nodes.append(vstack([b, Mat.zeros(ctx, pad, width)]) if pad else b)
    out_spec = _spec(h, r, ell, eps, alpha, q, t)
    return Assignment(out_spec, ctx, t, tuple(nodes))


# -- dispatch ------------------------------------------------------------------------

METHODS = ("mds", "blocks", "c1", "c2", "c3", "cover", "3msg")


def _method_fits(method: str, spec: NetworkSpec) -> bool:
    h, ell, eps, alpha = spec.h, spec.ell, spec.eps, spec.alpha
    if method in ("mds", "c1"):
        return ell == 1 and eps == 0 and alpha == h
    if method in ("blocks", "c3"):
        return h == 2 * ell and eps == ell - 1 and alpha == 2
    if method == "c2":
        return h == 2 * ell and eps == 1 and alpha == 2
    if method == "3msg":
        return (h, ell, eps, alpha) == (3, 1, 1, 3)
    return True


_FAMILY_NAMES = {
    "mds": "N_{h,r,h}", "c1": "N_{h,r,h}", "blocks": "(l-1,l)-N_{2l,r,3l-1}", "c3": "(l-1,l)-N_{2l,r,3l-1}",
    "c2": "(1,l)-N_{2l,r,2l+1}", "3msg": "(1,1)-N_{3,r,4}",
}


def solve_network(spec: NetworkSpec, method: str, cover: CoverCode | None = None) -> Assignment:
    """Run the builder named by ``method`` on a network spec that gives q (and t)."""
    if method not in METHODS:
        raise SolverError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if not _method_fits(method, spec):
        raise SolverError(f"method {method} solves {_FAMILY_NAMES[method]} networks, not {spec.name()}"
                          f" with alpha={spec.alpha}")
    if spec.q is None:
        raise SolverError("network spec must give the alphabet q")
    q, t = spec.q, spec.t or 1
    if method in ("mds", "blocks", "3msg") and t != 1:
        raise SolverError(f"method {method} is scalar; network has t={t}")
    if method == "mds":
        return scalar_mds_solution(spec.h, spec.r, q)
    if method == "blocks":
        return scalar_blocks_solution(spec.ell, q, spec.r)
    if method == "3msg":
        return scalar_3msg_solution(spec.r, q)
    if method == "c1":
        return vector_construction1(spec.h, q, t, spec.r)
    if method == "c2":
        return vector_construction2(q, t, spec.r, ell=spec.ell)
    if method == "c3":
        return vector_construction3(spec.ell, q, t, spec.r)
    if cover is None:
        raise SolverError("method cover needs a cover code")
    return vector_from_cover_code(spec, cover, q, t)


# -- assignment file -------------------------------------------------------------------


def write_assignment(a: Assignment) -> str:
    """Network header, then ``node i`` + G_i, then ``receiver j`` + P when eps > 0."""
    return "".join(iter_assignment_text(a))


def iter_assignment_text(a: Assignment) -> Iterator[str]:
    """Assignment file text in pieces, for streaming large networks to disk."""
    spec = a.spec
    yield write_network(NetworkSpec(spec.h, spec.r, spec.ell, spec.eps, spec.alpha, a.q, a.t))
    for i, g in enumerate(a.nodes):
        yield f"node {i}\n" + g.to_text()
    if spec.eps:
        for j in range(spec.n_receivers):
            yield f"receiver {j}\n" + a.direct_matrix(j).to_text()


def read_assignment(text: str) -> Assignment:
    lines = text.splitlines()
    cut = next((k for k, line in enumerate(lines) if line.strip().startswith(("node", "receiver"))), len(lines))
    try:
        spec = parse_header(lines[:cut])
    except NetworkError as exc:
        raise SolverError(f"bad header: {exc}") from exc
    if spec.q is None:
        raise SolverError("assignment header must give q")
    t = spec.t or 1
    ctx = gf(spec.q)
    tokens = iter("\n".join(lines[cut:]).split())
    nodes: list[Mat] = []
    direct: dict[int, Mat] = {}
    try:
        for tag in tokens:
            idx = int(next(tokens))
            m = Mat.from_tokens(ctx, tokens)
            if tag == "node":
                if idx != len(nodes):
                    raise SolverError(f"expected node {len(nodes)}, found node {idx}")
                nodes.append(m)
            elif tag == "receiver":
                if idx in direct:
                    raise SolverError(f"duplicate receiver {idx}")
                direct[idx] = m
            else:
                raise SolverError(f"unexpected token {tag!r}")
    except (StopIteration, ValueError) as exc:
        if isinstance(exc, SolverError):
            raise
        raise SolverError(f"malformed assignment body: {exc}") from None
    if spec.eps:
        missing = spec.n_receivers - len(direct)
        if missing or any(not 0 <= j < spec.n_receivers for j in direct):
            raise SolverError(f"assignment must list direct matrices for all {spec.n_receivers} receivers")
    elif direct:
        raise SolverError("eps = 0 but receiver matrices were given")
    return Assignment(spec, ctx, t, tuple(nodes), direct if spec.eps else None)


__all__ = [
    "Assignment", "SolverError", "METHODS", "completion_rows", "expand_scalar", "mds_threshold",
    "read_assignment", "scalar_3msg_solution", "scalar_blocks_solution", "scalar_mds_solution",
    "solve_network", "vector_construction1", "vector_construction2", "vector_construction3",
    "vector_from_cover_code", "write_assignment", "iter_assignment_text",
]
