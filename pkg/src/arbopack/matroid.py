"""Matroid rank oracles.

Six concrete families (free, uniform, partition, graphic, linear over a
prime field, explicit-by-bases) plus two derived constructions layered on
top of any oracle: parallel extension and truncation.  Oracles are
immutable after construction; rank queries are memoized per oracle on a
canonical frozenset key.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence


class MatroidError(ValueError):
    """Invalid matroid construction or query outside the ground set."""


class Matroid:
    """Abstract rank oracle over an ordered ground set of string ids."""

    def __init__(self, ground: Sequence[str]):
        ground = tuple(ground)
        if len(set(ground)) != len(ground):
            raise MatroidError("duplicate ground elements: %r" % (ground,))
        self.ground = ground
        self._ground_set = frozenset(ground)
        self._rank_cache: dict[frozenset, int] = {}

    # -- core queries ----------------------------------------------------

    def rank(self, elems: Iterable[str]) -> int:
        q = frozenset(elems)
        if not q <= self._ground_set:
            raise MatroidError(
                "elements %r not in ground set" % sorted(q - self._ground_set)
            )
        v = self._rank_cache.get(q)
        if v is None:
            v = self._rank(q)
            self._rank_cache[q] = v
        return v

    def _rank(self, q: frozenset) -> int:
        raise NotImplementedError

    def full_rank(self) -> int:
        return self.rank(self._ground_set)

    def is_independent(self, elems: Iterable[str]) -> bool:
        q = frozenset(elems)
        return self.rank(q) == len(q)

    def is_base(self, elems: Iterable[str]) -> bool:
        q = frozenset(elems)
        return self.rank(q) == len(q) == self.full_rank()

    def span(self, elems: Iterable[str]) -> frozenset:
        """Closure of the given set: all elements whose addition keeps the rank."""
        q = frozenset(elems)
        rq = self.rank(q)
        return frozenset(
            s for s in self.ground if s in q or self.rank(q | {s}) == rq
        )

    # -- derived constructions -------------------------------------------

    def extend_parallel(self, s: str, new_id: str | None = None) -> tuple["Matroid", str]:
        """Add a fresh element parallel to ``s``; returns (new oracle, new id)."""
        if s not in self._ground_set:
            raise MatroidError("cannot extend parallel to unknown element %r" % s)
        if self.rank({s}) != 1:
            raise MatroidError("cannot extend parallel to the loop %r" % s)
        if new_id is None:
            new_id = s + "'"
            while new_id in self._ground_set:
                new_id += "'"
        elif new_id in self._ground_set:
            raise MatroidError("new element id %r already in ground set" % new_id)
        return ParallelExtension(self, s, new_id), new_id

    def truncate(self, b: int) -> "Matroid":
        if b < 0:
            raise MatroidError("truncation bound must be non-negative")
        return Truncation(self, b)


class ParallelExtension(Matroid):
    """Derivation layer: rank queries rewrite the new element to its twin."""

    def __init__(self, base: Matroid, twin: str, new_id: str):
        self.base = base
        self.twin = twin
        self.new_id = new_id
        super().__init__(base.ground + (new_id,))

    def _rank(self, q: frozenset) -> int:
        if self.new_id in q:
            q = (q - {self.new_id}) | {self.twin}
        return self.base.rank(q)


class Truncation(Matroid):
    """Derivation layer: rank clamped at the bound."""

    def __init__(self, base: Matroid, bound: int):
        self.base = base
        self.bound = bound
        super().__init__(base.ground)

    def _rank(self, q: frozenset) -> int:
        return min(self.base.rank(q), self.bound)


# -- concrete families -----------------------------------------------------


class FreeMatroid(Matroid):
    def _rank(self, q: frozenset) -> int:
        return len(q)


class UniformMatroid(Matroid):
    def __init__(self, ground: Sequence[str], r: int):
        if r < 0:
            raise MatroidError("uniform rank must be non-negative")
        self.r = r
        super().__init__(ground)

    def _rank(self, q: frozenset) -> int:
        return min(len(q), self.r)


class PartitionMatroid(Matroid):
    """Blocks with per-block caps; rank(Q) = sum of min(|Q ∩ block|, cap)."""

    def __init__(self, blocks: Sequence[tuple[Sequence[str], int]]):
        ground: list[str] = []
        self.blocks: list[tuple[frozenset, int]] = []
        for elems, cap in blocks:
            if cap < 0:
                raise MatroidError("block cap must be non-negative")
            elems = tuple(elems)
            ground.extend(elems)
            self.blocks.append((frozenset(elems), cap))
        super().__init__(ground)  # raises on overlap via duplicate check

    def _rank(self, q: frozenset) -> int:
        return sum(min(len(q & blk), cap) for blk, cap in self.blocks)


class GraphicMatroid(Matroid):
    """Elements are edges of a reference graph; rank by spanning-forest size."""

    def __init__(self, edges: Sequence[tuple[str, object, object]]):
        # edges: (element-id, endpoint, endpoint); self-loops allowed (rank-0 loops)
        self.edges = {e: (u, v) for e, u, v in edges}
        super().__init__([e for e, _, _ in edges])

    def _rank(self, q: frozenset) -> int:
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for e in q:
            u, v = self.edges[e]
            for w in (u, v):
                if w not in parent:
                    parent[w] = w
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
        return r


class LinearMatroid(Matroid):
    """Column vectors over GF(p); rank by Gaussian elimination mod p."""

    def __init__(self, prime: int, columns: dict[str, Sequence[int]]):
        if prime < 2 or any(prime % d == 0 for d in range(2, int(prime ** 0.5) + 1)):
            raise MatroidError("field modulus %d is not prime" % prime)
        dims = {len(col) for col in columns.values()}
        if len(dims) > 1:
            raise MatroidError("columns have mismatched dimensions")
        self.prime = prime
        self.columns = {e: tuple(c % prime for c in col) for e, col in columns.items()}
        super().__init__(sorted(columns))

    def _rank(self, q: frozenset) -> int:
        p = self.prime
        rows = [list(col) for col in zip(*(self.columns[e] for e in sorted(q)))]
        if not rows:
            return 0
        rank = 0
        ncols = len(rows[0])
        for col in range(ncols):
            piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = pow(rows[rank][col], p - 2, p)
            rows[rank] = [(x * inv) % p for x in rows[rank]]
            for i in range(len(rows)):
                if i != rank and rows[i][col] % p:
                    f = rows[i][col]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
            rank += 1
        return rank


class ExplicitMatroid(Matroid):
    """Given by the list of its bases; rank(Q) = max over bases of |Q ∩ B|."""

    def __init__(self, ground: Sequence[str], bases: Sequence[Iterable[str]],
                 validate_exchange: bool = False):
        super().__init__(ground)
        self.bases = [frozenset(b) for b in bases]
        if not self.bases:
            raise MatroidError("explicit matroid needs at least one base")
        sizes = {len(b) for b in self.bases}
        if len(sizes) != 1:
            raise MatroidError("listed bases have unequal sizes")
        for b in self.bases:
            if not b <= self._ground_set:
                raise MatroidError("base %r not within ground set" % sorted(b))
        if validate_exchange:
            self._check_exchange()

    def _check_exchange(self) -> None:
        # exponential; opt-in only
        for b1, b2 in itertools.permutations(self.bases, 2):
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in self.bases for y in b2 - b1):
                    raise MatroidError(
                        "base-exchange fails for %r, %r at %r"
                        % (sorted(b1), sorted(b2), x)
                    )

    def _rank(self, q: frozenset) -> int:
        return max(len(q & b) for b in self.bases)
