"""Censuses of skew braces by two independent searches.

``enumerate_gammas`` backtracks over gamma functions, propagating the
functional equation through the partially known multiplicative group.
``enumerate_via_holomorph`` never touches the functional equation: it
searches regular subgroups of the holomorph, realised as permutations of
the additive group, and reads the multiplicative table off the subgroup.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from .brace import SkewBrace, circ_from_gamma, validate_brace
from .catalog import groups_of_order
from .errors import OrderCapExceeded
from .groups import FiniteGroup, Perm, automorphism_group, invert, order_cap
from .isoclinism import are_isomorphic, brace_signature

log = logging.getLogger(__name__)

HOLOMORPH_CAP = 16


class _Composition(dict):
    """``comp[i, j]``: index of ``auts[i]`` followed by ``auts[j]``, filled on demand."""

    def __init__(self, auts: Sequence[Perm]):
        super().__init__()
        self.auts = auts
        self.index = {p: k for k, p in enumerate(auts)}

    def __missing__(self, key: tuple[int, int]) -> int:
        p, q = self.auts[key[0]], self.auts[key[1]]
        value = self[key] = self.index[tuple(q[x] for x in p)]
        return value


def enumerate_gammas(G: FiniteGroup, cap: int | None = None) -> list[SkewBrace]:
    """Every skew brace with additive group exactly ``G`` (as labelled tables).

    The next unassigned element always is the smallest one outside the
    multiplicative subgroup generated so far, so each gamma function is
    reached along exactly one branch.
    """
    n = G.order
    if n > order_cap(cap):
        raise OrderCapExceeded(f"order {n} exceeds cap {order_cap(cap)}")
    auts = list(automorphism_group(G, cap).elements)
    ident = auts.index(tuple(range(n)))
    comp = _Composition(auts)
    inverse = [comp.index[invert(p)] for p in auts]
    rows = G.rows
    table = G.table
    aut_arr = np.asarray(auts, dtype=np.int64)
    aut_ids = np.arange(len(auts))
    squares = np.array([comp.index[tuple(p[i] for i in p)] for p in auts])
    found: list[list[int]] = []

    def extend(gam: list[int], domain: list[int], x: int, a: int) -> bool:
        gam[x] = a
        domain.append(x)
        queue = [x]
        while queue:
            p = queue.pop()
            for q in list(domain):
                for u, v in ((p, q), (q, p)):
                    # u o v = gamma(v)(u) . v  and  gamma(u o v) = gamma(u) then gamma(v)
                    z = rows[auts[gam[v]][u]][v]
                    want = comp[gam[u], gam[v]]
                    if gam[z] < 0:
                        gam[z] = want
                        domain.append(z)
                        queue.append(z)
                    elif gam[z] != want:
                        return False
        # a genuine solution closes up to a subgroup of (B, o)
        return n % len(domain) == 0

    def rec(gam: list[int], domain: list[int]) -> None:
        if len(domain) == n:
            found.append(gam)
            return
        covered = set(domain)
        x = next(e for e in range(n) if e not in covered)
        # x o q is known without gamma(x); if its gamma is already fixed,
        # gamma(x) = gamma(x o q) followed by gamma(q)^-1 is forced
        candidates = None
        for q in domain:
            z = rows[auts[gam[q]][x]][q]
            if gam[z] >= 0:
                candidates = [comp[gam[z], inverse[gam[q]]]]
                break
        if candidates is None:
            # q o x = a(q) . x for gamma(x) = a; where that lands on a known
            # gamma, a = gamma(q)^-1 followed by gamma(q o x) (vectorised over a)
            # and x o x = a(x) . x must carry gamma equal to a followed by a
            zz = table[aut_arr[:, x], x]
            known = np.asarray(gam)[zz]
            ok = (known < 0) | (known == squares)
            for q in domain[1:]:
                req = np.array([comp[inverse[gam[q]], gam[z]] if gam[z] >= 0 else -1 for z in range(n)])
                r = req[table[aut_arr[:, q], x]]
                ok &= (r < 0) | (r == aut_ids)
            candidates = np.flatnonzero(ok).tolist()
        for a in candidates:
            g2, d2 = gam[:], domain[:]
            if extend(g2, d2, x, a):
                rec(g2, d2)

    gam = [-1] * n
    gam[0] = ident
    rec(gam, [0])
    braces = [circ_from_gamma(G, [auts[k] for k in g], name=G.name) for g in found]
    return sorted(braces, key=lambda B: B.key)


def _semiregular(p: Perm) -> bool:
    seen = [False] * len(p)
    length = None
    for start in range(len(p)):
        if seen[start]:
            continue
        k, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            k += 1
        if length is None:
            length = k
        elif k != length:
            return False
    return True


def enumerate_via_holomorph(G: FiniteGroup, cap: int | None = None) -> list[SkewBrace]:
    """Regular subgroups of ``Hol(G)`` acting on ``G``, each read as a circ table.

    The holomorph element ``(a, b)`` acts as ``w -> a(w) . b``.  A regular
    subgroup has exactly one element ``s_x`` sending 0 to ``x``, and
    ``y o x = s_x(y)``.
    """
    n = G.order
    limit = HOLOMORPH_CAP if cap is None else cap
    if n > limit:
        raise OrderCapExceeded(f"holomorph oracle limited to order {limit}")
    rows = G.rows
    auts = automorphism_group(G).elements
    ident = tuple(range(n))
    # candidate holomorph elements sending 0 to x, without fixed points of mixed cycle type
    cands: dict[int, list[Perm]] = {}
    for x in range(1, n):
        perms = (tuple(rows[a[w]][x] for w in range(n)) for a in auts)
        cands[x] = [s for s in perms if _semiregular(s)]
    found: list[dict[int, Perm]] = []

    def generate(by_image: dict[int, Perm], gens: list[Perm]) -> dict[int, Perm] | None:
        # closure keyed by image of 0; a repeated image means a nontrivial point stabiliser
        out = dict(by_image)
        frontier = list(out.values())
        while frontier:
            new = []
            for s in frontier:
                for g in gens:
                    r = tuple(g[i] for i in s)
                    img = r[0]
                    if img in out:
                        if out[img] != r:
                            return None
                        continue
                    out[img] = r
                    new.append(r)
                    if len(out) > n:
                        return None
            frontier = new
        return out

    def rec(by_image: dict[int, Perm], gens: list[Perm]) -> None:
        if len(by_image) == n:
            found.append(by_image)
            return
        x = next(e for e in range(n) if e not in by_image)
        for s in cands[x]:
            got = generate(by_image, [*gens, s])
            if got is not None and n % len(got) == 0:
                rec(got, [*gens, s])

    rec({0: ident}, [])
    braces = []
    for sub in found:
        circ = np.empty((n, n), dtype=np.int64)
        for x, s in sub.items():
            circ[:, x] = s
        braces.append(validate_brace(G.table, circ, name=G.name))
    return sorted(braces, key=lambda B: B.key)


def _orbit_images(circ: np.ndarray, auts: np.ndarray) -> np.ndarray:
    k = len(auts)
    inv = np.argsort(auts, axis=1)
    return auts[np.arange(k)[:, None, None], circ[inv[:, :, None], inv[:, None, :]]]


def canonical_circ(G: FiniteGroup, circ: np.ndarray, auts: np.ndarray) -> np.ndarray:
    """Lexicographically least image of ``circ`` under ``Aut(G)``.

    Relabelling by an automorphism fixes the additive table, so the result is
    again a brace on ``G`` isomorphic to the input.
    """
    images = _orbit_images(circ, auts)
    flat = images.reshape(len(auts), -1)
    best = np.lexsort(flat.T[::-1])[0]
    return images[best]


def orbit_representatives(G: FiniteGroup, braces: Sequence[SkewBrace], cap: int | None = None) -> list[SkewBrace]:
    """One brace per ``Aut(G)``-orbit (brace isomorphism classes with additive group ``G``).

    Each orbit is expanded once; later members are recognised by lookup.
    """
    auts = np.asarray(automorphism_group(G, cap).elements, dtype=np.int64)
    seen: set[bytes] = set()
    reps: dict[bytes, np.ndarray] = {}
    for B in braces:
        if B.circ.table.astype(np.int16).tobytes() in seen:
            continue
        images = _orbit_images(B.circ.table, auts).astype(np.int16)
        keys = [img.tobytes() for img in images]
        seen.update(keys)
        c = images[np.lexsort(images.reshape(len(auts), -1).T[::-1])[0]]
        reps[c.tobytes()] = c
    return [validate_brace(G.table, reps[k], name=G.name) for k in sorted(reps)]


def dedup_up_to_iso(braces: Sequence[SkewBrace]) -> list[SkewBrace]:
    """One member per brace-isomorphism class, the one with least table key.

    Members are bucketed by a cheap invariant and compared by isomorphism
    search inside buckets.  Output sorted by key.
    """
    buckets: dict[tuple, list[SkewBrace]] = {}
    for B in sorted(braces, key=lambda B: B.key):
        bucket = buckets.setdefault(brace_signature(B), [])
        if not any(are_isomorphic(R, B) for R in bucket):
            bucket.append(B)
    return sorted((B for bucket in buckets.values() for B in bucket), key=lambda B: B.key)


def _group_census(G: FiniteGroup, cap: int | None) -> list[SkewBrace]:
    return orbit_representatives(G, enumerate_gammas(G, cap), cap)


def census(order: int, cap: int | None = None, jobs: int = 1) -> list[SkewBrace]:
    """All skew braces of ``order`` up to isomorphism, grouped by catalog group.

    Brace ``k`` with additive group ``G`` is named ``"<G>#<k>"``.
    """
    groups = groups_of_order(order)
    if jobs > 1 and len(groups) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            per_group = list(ex.map(_group_census, groups, [cap] * len(groups)))
    else:
        per_group = [_group_census(G, cap) for G in groups]
    out = []
    for G, reps in zip(groups, per_group):
        for k, B in enumerate(reps):
            out.append(SkewBrace(B.add, B.circ, B.gamma_table, f"{G.name}#{k}"))
        log.info("order %d, additive group %s: %d braces", order, G.name, len(reps))
    return out


def census_up_to(max_order: int, cap: int | None = None, jobs: int = 1) -> list[SkewBrace]:
    return [B for n in range(1, max_order + 1) for B in census(n, cap, jobs)]
