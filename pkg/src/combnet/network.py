"""The (eps, ell)-N_{h,r,s} generalized combination network.

A source holds h messages and has ell parallel links to each of r middle
nodes.  Every alpha-subset of middle nodes feeds one receiver over ell
parallel links per node, and the source adds eps direct links to every
receiver, so each receiver has s = alpha*ell + eps incoming links.

The topology is never materialized: a receiver is identified by its
alpha-subset of middle nodes, and receivers are numbered in lexicographic
order of those subsets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence


class NetworkError(ValueError):
    pass


class Classification(str, Enum):
    NORMAL = "normal"
    TRIVIAL = "trivial"
    UNSOLVABLE = "unsolvable"

    def __str__(self) -> str:
        return self.value


def classify_params(h: int, ell: int, eps: int, alpha: int) -> Classification:
    """Trivial if ell + eps >= h, unsolvable if alpha*ell + eps < h, else normal."""
    if ell + eps >= h:
        return Classification.TRIVIAL
    if alpha * ell + eps < h:
        return Classification.UNSOLVABLE
    return Classification.NORMAL


@dataclass(frozen=True)
class NetworkSpec:
    h: int
    r: int
    ell: int = 1
    eps: int = 0
    alpha: int = 2
    q: int | None = None  # intended solution alphabet; t == 1 means scalar
    t: int | None = None

    def __post_init__(self):
        if self.h < 1 or self.ell < 1 or self.eps < 0 or self.alpha < 1:
            raise NetworkError(f"need h >= 1, ell >= 1, eps >= 0, alpha >= 1: {self}")
        if self.r < self.alpha:
            raise NetworkError(f"r={self.r} middle nodes cannot serve receivers of alpha={self.alpha} nodes")

    @property
    def s(self) -> int:
        return self.alpha * self.ell + self.eps

    @property
    def n_receivers(self) -> int:
        return math.comb(self.r, self.alpha)

    N = n_receivers

    @property
    def classification(self) -> Classification:
        return classify_params(self.h, self.ell, self.eps, self.alpha)

    def name(self) -> str:
        return f"({self.eps},{self.ell})-N_{{{self.h},{self.r},{self.s}}}"

    def receivers(self) -> Iterator[tuple[int, ...]]:
        return itertools.combinations(range(self.r), self.alpha)

    def receiver_at(self, index: int) -> tuple[int, ...]:
        """The index-th alpha-subset in lexicographic order."""
        if not 0 <= index < self.n_receivers:
            raise NetworkError(f"receiver {index} outside [0, {self.n_receivers})")
        out = []
        x = 0
        for remaining in range(self.alpha, 0, -1):
            while True:
                block = math.comb(self.r - x - 1, remaining - 1)
                if index < block:
                    break
                index -= block
                x += 1
            out.append(x)
            x += 1
        return tuple(out)

    def receiver_index(self, nodes: Sequence[int]) -> int:
        nodes = sorted(nodes)
        if len(nodes) != self.alpha or len(set(nodes)) != self.alpha or not all(0 <= v < self.r for v in nodes):
            raise NetworkError(f"{nodes} is not an alpha-subset of middle nodes")
        index, prev = 0, -1
        for pos, v in enumerate(nodes):
            remaining = self.alpha - pos
            for skipped in range(prev + 1, v):
                index += math.comb(self.r - skipped - 1, remaining - 1)
            prev = v
        return index


def build_network(h: int, r: int, ell: int = 1, eps: int = 0, alpha: int = 2,
                  q: int | None = None, t: int | None = None) -> NetworkSpec:
    return NetworkSpec(h, r, ell, eps, alpha, q, t)


def classify(spec: NetworkSpec) -> Classification:
    return spec.classification


def receivers(spec: NetworkSpec) -> Iterator[tuple[int, ...]]:
    return spec.receivers()


# -- network file ------------------------------------------------------------------

_KEYS = ("h", "r", "ell", "eps", "alpha", "q", "t")
_REQUIRED = ("h", "r", "ell", "eps", "alpha")


def parse_header(lines: Sequence[str]) -> NetworkSpec:
    values: dict[str, int] = {}
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep:
            raise NetworkError(f"expected 'key: value', got {raw!r}")
        if key not in _KEYS:
            raise NetworkError(f"unknown key {key!r}")
        if key in values:
            raise NetworkError(f"duplicate key {key!r}")
        try:
            values[key] = int(value)
        except ValueError:
            raise NetworkError(f"{key} must be an integer, got {value.strip()!r}") from None
    missing = [k for k in _REQUIRED if k not in values]
    if missing:
        raise NetworkError(f"missing keys: {', '.join(missing)}")
    return NetworkSpec(**values)


def read_network(text: str) -> NetworkSpec:
    return parse_header(text.splitlines())


def write_network(spec: NetworkSpec) -> str:
    out = [f"h: {spec.h}", f"r: {spec.r}", f"ell: {spec.ell}", f"eps: {spec.eps}", f"alpha: {spec.alpha}"]
    if spec.q is not None:
        out.append(f"q: {spec.q}")
    if spec.t is not None:
        out.append(f"t: {spec.t}")
    return "\n".join(out) + "\n"
