"""Ground-truth checks for assignments: transfer-matrix ranks and packet simulation.

Nothing here looks at how an assignment was built.  A receiver is served
when the stack of its middle-node blocks and direct-link rows has rank h*t.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .linalg import LinAlgError, Mat, hstack, rank, solve, vstack
from .solver import Assignment, SolverError

SAMPLE_THRESHOLD = 10**6
DEFAULT_SAMPLE = 10**5


class VerifyError(ValueError):
    pass


def _nodes_of(a: Assignment, receiver: int | Sequence[int]) -> tuple[int, tuple[int, ...]]:
    spec = a.spec
    if isinstance(receiver, int):
        return receiver, spec.receiver_at(receiver)
    nodes = tuple(sorted(receiver))
    return spec.receiver_index(nodes), nodes


def transfer_matrix(a: Assignment, receiver: int | Sequence[int]) -> Mat:
    """Blocks G_i of the receiver's middle nodes (ascending), then its direct rows P."""
    index, nodes = _nodes_of(a, receiver)
    blocks = [a.nodes[i] for i in nodes]
    try:
        p = a.direct_matrix(index)
    except SolverError as exc:
        raise VerifyError(str(exc)) from exc
    if p is not None:
        blocks.append(p)
    if a.ctx.q == 2:
        for b in blocks:
            b.packed()  # cache so vstack carries packed rows
    try:
        return vstack(blocks)
    except LinAlgError as exc:
        raise VerifyError(f"receiver {index}: {exc}") from exc


@dataclass
class VerifyReport:
    network: str
    q: int
    t: int
    total: int
    results: list[tuple[int, int]] = field(default_factory=list)  # (receiver id, rank), ascending id
    target: int = 0
    sampled: bool = False
    seed: int | None = None

    @property
    def checked(self) -> int:
        return len(self.results)

    @property
    def failures(self) -> list[tuple[int, int]]:
        return [(j, k) for j, k in self.results if k != self.target]

    @property
    def passed(self) -> int:
        return self.checked - len(self.failures)

    @property
    def ok(self) -> bool:
        return self.passed == self.checked

    def lines(self) -> Iterator[str]:
        for j, k in self.results:
            yield f"receiver {j} rank {k} {'pass' if k == self.target else 'fail'}"

    def summary(self) -> str:
        cover = f"{self.checked}/{self.total} receivers checked"
        if self.sampled:
            cover += f" (seeded sample, seed {self.seed})"
        head = f"{self.network} over GF({self.q}), t={self.t}: {cover}, {self.passed}/{self.checked} pass"
        bad = self.failures
        if not bad:
            return head
        shown = ", ".join(f"{j} (rank {k})" for j, k in bad[:10])
        more = f" and {len(bad) - 10} more" if len(bad) > 10 else ""
        return f"{head}\nfailing receivers: {shown}{more}"


def check_all(a: Assignment, sample: int | None = None, seed: int = 0) -> VerifyReport:
    """Rank of every receiver's transfer matrix, or of a seeded sample.

    Without ``sample``, networks with more than 10^6 receivers are sampled
    at 10^5 receivers; the report says so.
    """
    spec = a.spec
    N = spec.n_receivers
    if sample is None and N > SAMPLE_THRESHOLD:
        sample = DEFAULT_SAMPLE
    if sample is not None and sample < N:
        ids: Iterable[int] = sorted(random.Random(seed).sample(range(N), sample))
        sampled = True
    else:
        ids, sampled = range(N), False
    target = spec.h * a.t
    report = VerifyReport(spec.name(), a.q, a.t, N, target=target, sampled=sampled, seed=seed if sampled else None)
    for j in ids:
        report.results.append((j, rank(transfer_matrix(a, j))))
    return report


# -- simulation ----------------------------------------------------------------------


class Decode(NamedTuple):
    receiver: int
    nodes: tuple[int, ...]
    decoded: tuple[tuple[int, ...], ...] | None  # h message vectors, or None when decoding failed
    ok: bool
    error: str | None = None


def _column(a: Assignment, vec: Sequence[int]) -> Mat:
    return Mat(a.ctx, [[v] for v in vec], 1)


def simulate(a: Assignment, messages: Sequence[Sequence[int]], receivers: Iterable[int] | None = None,
             tamper: Mapping[int, int] | None = None) -> list[Decode]:
    """Send ``messages`` (h vectors of length t) through the network and decode at each receiver.

    Middle node i forwards G_i x, direct links carry P x.  ``tamper`` maps a
    receiver id to the position of one received symbol to corrupt (adds 1).
    """
    spec, t, ctx = a.spec, a.t, a.ctx
    if len(messages) != spec.h or any(len(m) != t for m in messages):
        raise VerifyError(f"need {spec.h} message vectors of length {t}")
    x = [int(v) for m in messages for v in m]
    if any(not 0 <= v < ctx.q for v in x):
        raise VerifyError(f"message symbols must lie in GF({ctx.q})")
    xcol = _column(a, x)
    sent = [g @ xcol for g in a.nodes]  # one packet set per middle node
    tamper = tamper or {}
    out = []
    ids = range(spec.n_receivers) if receivers is None else receivers
    for j in ids:
        nodes = spec.receiver_at(j)
        A = transfer_matrix(a, j)
        parts = [sent[i] for i in nodes]
        p = a.direct_matrix(j)
        if p is not None:
            parts.append(p @ xcol)
        y = [row[0] for part in parts for row in part.data]
        if j in tamper:
            pos = tamper[j]
            y[pos] = ctx.add(y[pos], 1)
        try:
            sol = solve(A, _column(a, y))
        except LinAlgError as exc:
            out.append(Decode(j, nodes, None, False, str(exc)))
            continue
        flat = [row[0] for row in sol.data]
        dec = tuple(tuple(flat[k * t:(k + 1) * t]) for k in range(spec.h))
        out.append(Decode(j, nodes, dec, flat == x))
    return out


def block_vandermonde(members: Sequence[Mat], h: int) -> Mat:
    """Block row [I | C | C^2 | ... | C^(h-1)] for each member C, stacked."""
    if not members:
        raise VerifyError("no members")
    return vstack([hstack([c**j for j in range(h)]) for c in members])
