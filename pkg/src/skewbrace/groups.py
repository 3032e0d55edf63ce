"""Finite groups on index-based Cayley tables.

Elements are the integers ``0..n-1`` and entry ``(i, j)`` of a table is the
product ``i * j``.  After validation the identity is always element 0.

Permutations are plain tuples of images.  ``compose(p, q)`` applies ``p``
first and ``q`` second, matching the exponent notation ``x^(pq) = (x^p)^q``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotLatinSquare,
    OrderCapExceeded,
)

Perm = tuple[int, ...]

DEFAULT_CAP = 64
BRUTE_FORCE_LIMIT = 8


def order_cap(cap: int | None = None) -> int:
    """Resolve the order cap: explicit value, then ``SKEWBRACE_CAP``, then the default."""
    if cap is not None:
        return cap
    env = os.environ.get("SKEWBRACE_CAP")
    return int(env) if env else DEFAULT_CAP


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Sequence[int], q: Sequence[int]) -> Perm:
    """Apply ``p`` first, then ``q``."""
    return tuple(q[i] for i in p)


def invert(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def relabel_table(table: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Transport a table along ``perm`` (old label -> new label)."""
    p = np.asarray(perm, dtype=np.int64)
    pinv = np.argsort(p)
    return p[table[np.ix_(pinv, pinv)]]


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    inverses: np.ndarray
    identity: int = 0
    name: str = ""

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inv(self) -> list[int]:
        return self.inverses.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    @cached_property
    def key(self) -> bytes:
        return self.table.astype(np.int16).tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} of order {self.order}>"

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        return _element_orders(self.rows)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())


def validate_group(table, *, normalize_identity: bool = True, name: str = "") -> FiniteGroup:
    """Check the group axioms on a square table and return the group.

    Checks run in the order: entries in range, identity, inverses,
    associativity, Latin property.  Each failure names the first violating
    cell or triple.  With ``normalize_identity`` the identity is moved to 0 by
    swapping it with label 0.
    """
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotLatinSquare(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    bad = np.argwhere((t < 0) | (t >= n))
    if len(bad):
        i, j = map(int, bad[0])
        raise NotLatinSquare(f"entry ({i},{j}) = {int(t[i, j])} is outside 0..{n - 1}")

    ar = np.arange(n)
    ids = [e for e in range(n) if (t[e] == ar).all() and (t[:, e] == ar).all()]
    if not ids:
        raise NoIdentity("no two-sided identity element")
    e = ids[0]

    inverses = np.full(n, -1, dtype=np.int64)
    for x in range(n):
        cand = np.flatnonzero((t[x] == e) & (t[:, x] == e))
        if len(cand) == 0:
            raise NoInverse(f"element {x} has no two-sided inverse")
        inverses[x] = cand[0]

    lhs = t[t]  # [i, j, k] -> (i j) k
    rhs = t[:, t]  # [i, j, k] -> i (j k)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k = map(int, bad[0])
        raise NotAssociative(f"({i}*{j})*{k} != {i}*({j}*{k})")

    for axis, label in ((1, "row"), (0, "column")):
        s = np.sort(t, axis=axis)
        broken = np.flatnonzero(~(s == (ar if axis == 1 else ar[:, None])).all(axis=axis))
        if len(broken):
            raise NotLatinSquare(f"{label} {int(broken[0])} is not a permutation")

    if normalize_identity and e != 0:
        swap = list(range(n))
        swap[0], swap[e] = e, 0
        t = relabel_table(t, swap)
        inverses = np.argmax(t == 0, axis=1)
        e = 0
    return FiniteGroup(t, inverses, e, name)


def _element_orders(rows: list[list[int]]) -> tuple[int, ...]:
    out = []
    for x in range(len(rows)):
        k, y = 1, x
        while y != 0:
            y = rows[y][x]
            k += 1
        out.append(k)
    return tuple(out)


def center(G: FiniteGroup) -> frozenset[int]:
    t = G.table
    return frozenset(int(z) for z in np.flatnonzero((t == t.T).all(axis=0)))


def commutator(G: FiniteGroup, x: int, y: int) -> int:
    """``[x, y] = x^-1 y^-1 x y``."""
    r, inv = G.rows, G.inv
    return r[r[r[inv[x]][inv[y]]][x]][y]


def conjugate(G: FiniteGroup, x: int, y: int) -> int:
    """``x^y = y^-1 x y``."""
    r = G.rows
    return r[r[G.inv[y]][x]][y]


def closure(tables: Sequence[list[list[int]]], gens: Iterable[int]) -> frozenset[int]:
    """Smallest set containing ``gens`` and 0 closed under every table."""
    seen = {0}
    seen.update(gens)
    frontier = list(seen)
    while frontier:
        new = []
        current = list(seen)
        for a in frontier:
            for b in current:
                for t in tables:
                    for c in (t[a][b], t[b][a]):
                        if c not in seen:
                            seen.add(c)
                            new.append(c)
        frontier = new
    return frozenset(seen)


def subgroup_closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    return closure([G.rows], gens)


def is_normal(G: FiniteGroup, H: Iterable[int]) -> bool:
    H = set(H)
    return all(conjugate(G, h, g) in H for h in H for g in range(G.order))


def commutator_subgroup(G: FiniteGroup) -> frozenset[int]:
    n = G.order
    gens = {commutator(G, x, y) for x in range(n) for y in range(n)}
    D = subgroup_closure(G, gens)
    assert is_normal(G, D), "commutator subgroup is not normal"
    return D


def greedy_generators(tables: Sequence[list[list[int]]], n: int) -> list[int]:
    """Repeatedly add the element whose addition grows the closure the most."""
    gens: list[int] = []
    current = frozenset({0})
    while len(current) < n:
        best, best_set = -1, current
        for x in range(n):
            if x in current:
                continue
            c = closure(tables, [*gens, x])
            if len(c) > len(best_set):
                best, best_set = x, c
        gens.append(best)
        current = best_set
    return gens


def _close_map(f: list[int], used: list[bool], domain: list[int], queue: list[int],
               src: Sequence[list[list[int]]], dst: Sequence[list[list[int]]]) -> bool:
    """Propagate a partial homomorphism ``f`` through products; False on conflict."""
    while queue:
        a = queue.pop()
        fa = f[a]
        for b in list(domain):
            fb = f[b]
            for S, D in zip(src, dst):
                for c, d in ((S[a][b], D[fa][fb]), (S[b][a], D[fb][fa])):
                    fc = f[c]
                    if fc < 0:
                        if used[d]:
                            return False
                        f[c] = d
                        used[d] = True
                        domain.append(c)
                        queue.append(c)
                    elif fc != d:
                        return False
    return True


def isomorphism_search(src: Sequence[list[list[int]]], dst: Sequence[list[list[int]]],
                       limit: int | None = None) -> list[Perm]:
    """All bijections preserving every table pairwise, sorted by image tuple.

    Backtracks over images of a greedy generating set of the source; images
    must match element orders under every operation.  With ``limit`` the
    search stops after that many maps (in search order, then sorted).
    """
    n = len(src[0])
    if n != len(dst[0]):
        return []
    sig_src = list(zip(*(_element_orders(t) for t in src)))
    sig_dst = list(zip(*(_element_orders(t) for t in dst)))
    if sorted(sig_src) != sorted(sig_dst):
        return []
    gens = greedy_generators(src, n)
    cands = {g: [y for y in range(n) if sig_dst[y] == sig_src[g]] for g in gens}

    results: list[Perm] = []
    f = [-1] * n
    used = [False] * n
    f[0] = 0
    used[0] = True
    domain = [0]
    if not _close_map(f, used, domain, [0], src, dst):
        return []

    def rec(f: list[int], used: list[bool], domain: list[int]) -> bool:
        if len(domain) == n:
            results.append(tuple(f))
            return limit is not None and len(results) >= limit
        g = next(x for x in gens if f[x] < 0)
        for img in cands[g]:
            if used[img]:
                continue
            f2, used2, dom2 = f[:], used[:], [*domain, g]
            f2[g] = img
            used2[img] = True
            if _close_map(f2, used2, dom2, [g], src, dst) and rec(f2, used2, dom2):
                return True
        return False

    rec(f, used, domain)
    return sorted(results)


def isomorphisms(G: FiniteGroup, H: FiniteGroup, limit: int | None = None) -> list[Perm]:
    return isomorphism_search([G.rows], [H.rows], limit)


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return bool(isomorphisms(G, H, limit=1))


def preserves(perm: Sequence[int], src: np.ndarray, dst: np.ndarray) -> bool:
    """Full-table check that ``perm`` is a homomorphism from ``src`` to ``dst``."""
    p = np.asarray(perm)
    return bool((dst[np.ix_(p, p)] == p[src]).all())


@dataclass(frozen=True, eq=False)
class AutomorphismGroup:
    group: FiniteGroup
    elements: tuple[Perm, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.index

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {p: i for i, p in enumerate(self.elements)}

    @cached_property
    def generators(self) -> list[Perm]:
        gens: list[Perm] = []
        reached = {identity_perm(self.group.order)}
        for p in self.elements:
            if p in reached:
                continue
            gens.append(p)
            frontier = list(reached)
            while frontier:
                new = []
                for q in frontier:
                    for g in gens:
                        r = compose(q, g)
                        if r not in reached:
                            reached.add(r)
                            new.append(r)
                frontier = new
        return gens

    def verify(self) -> None:
        t = self.group.table
        assert identity_perm(self.group.order) in self.index
        for p in self.elements:
            assert preserves(p, t, t), f"{p} does not preserve the table"
        for p in self.elements:
            for g in self.generators:
                assert compose(p, g) in self.index, "automorphism set not closed"


def automorphism_group(G: FiniteGroup, cap: int | None = None) -> AutomorphismGroup:
    if G.order > order_cap(cap):
        raise OrderCapExceeded(f"order {G.order} exceeds cap {order_cap(cap)}")
    A = AutomorphismGroup(G, tuple(isomorphisms(G, G)))
    A.verify()
    return A


def automorphisms_bruteforce(G: FiniteGroup) -> list[Perm]:
    """Test oracle: filter every identity-fixing bijection (small orders only)."""
    n = G.order
    if n > BRUTE_FORCE_LIMIT:
        raise OrderCapExceeded(f"brute force limited to order {BRUTE_FORCE_LIMIT}")
    t = G.table
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = (0, *rest)
        if preserves(p, t, t):
            out.append(p)
    return out
