"""Structural invariants of a brace: annihilator, derived ideal, quotients.

An ideal is operationally any sub-brace for which :func:`quotient_by`
succeeds: its additive cosets must carry both operations consistently,
which is checked on every representative pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Literal

import numpy as np

from .brace import SkewBrace, validate_brace
from .errors import BraceError, IdealClosureFailed, NotWellDefined
from .groups import Perm, center, closure, commutator_subgroup

Kind = Literal["additive", "star"]


def commutator_table(B: SkewBrace) -> np.ndarray:
    """``[x, y] = x^-1 y^-1 x y`` in ``(B, .)`` for all pairs."""
    t, inv = B.add.table, B.add.inverses
    return t[t[t[inv[:, None], inv[None, :]], np.arange(B.order)[:, None]], np.arange(B.order)[None, :]]


def star_table(B: SkewBrace) -> np.ndarray:
    """``x * y = x^-1 . (x o y) . y^-1`` for all pairs."""
    t, inv = B.add.table, B.add.inverses
    return t[t[inv[:, None], B.circ.table], inv[None, :]]


def holomorph_commutator_table(B: SkewBrace) -> np.ndarray:
    """``[x, gamma(y)] = x^-1 . gamma(y)(x)``, computed in the holomorph."""
    return B.add.table[B.add.inverses[:, None], B.gamma_table.T]


def star(B: SkewBrace, x: int, y: int) -> int:
    r, inv = B.add.rows, B.add.inv
    return r[r[inv[x]][B.circ.rows[x][y]]][inv[y]]


def mult_commutator(B: SkewBrace, x: int, y: int) -> int:
    """``x^-o o y^-o o x o y`` in ``(B, o)``."""
    c, inv = B.circ.rows, B.circ.inv
    return c[c[c[inv[x]][inv[y]]][x]][y]


def mult_commutator_table(B: SkewBrace) -> np.ndarray:
    c, inv = B.circ.table, B.circ.inverses
    ar = np.arange(B.order)
    return c[c[c[inv[:, None], inv[None, :]], ar[:, None]], ar[None, :]]


def kernel_gamma(B: SkewBrace) -> frozenset[int]:
    ar = np.arange(B.order)
    return frozenset(int(x) for x in np.flatnonzero((B.gamma_table == ar).all(axis=1)))


def centralizer_of_gamma_image(B: SkewBrace) -> frozenset[int]:
    ar = np.arange(B.order)
    return frozenset(int(x) for x in np.flatnonzero((B.gamma_table == ar).all(axis=0)))


@dataclass(frozen=True, eq=False)
class SubBrace:
    parent: SkewBrace
    elements: tuple[int, ...]

    def __post_init__(self):
        s = set(self.elements)
        if 0 not in s or tuple(sorted(s)) != self.elements:
            raise BraceError("sub-brace elements must be sorted, distinct and contain 0")
        for T, label in ((self.parent.add.rows, "."), (self.parent.circ.rows, "o")):
            for a in self.elements:
                for b in self.elements:
                    if T[a][b] not in s:
                        raise BraceError(f"not closed under {label}: {a} {label} {b} = {T[a][b]}")

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.as_set

    @cached_property
    def as_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def position(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def as_brace(self) -> SkewBrace:
        """The sub-brace relabelled ``0..k-1`` in increasing element order."""
        idx = np.asarray(self.elements)
        pos = np.full(self.parent.order, -1)
        pos[idx] = np.arange(len(idx))
        add = pos[self.parent.add.table[np.ix_(idx, idx)]]
        circ = pos[self.parent.circ.table[np.ix_(idx, idx)]]
        return validate_brace(add, circ)


def sub_brace(B: SkewBrace, elements: Iterable[int]) -> SubBrace:
    return SubBrace(B, tuple(sorted(set(elements))))


def annihilator(B: SkewBrace) -> SubBrace:
    """``Z(B, .)`` intersected with ``ker gamma`` and the fixed points of ``gamma(B)``."""
    return sub_brace(B, center(B.add) & kernel_gamma(B) & centralizer_of_gamma_image(B))


def derived_ideal(B: SkewBrace) -> SubBrace:
    """Additive subgroup generated by all ``[x, y]`` and all ``x * y``.

    Also asserts that it is closed under ``o`` and equals the setwise product
    of ``[B, B]`` with the subgroup generated by the star values.
    """
    stars = set(star_table(B).ravel().tolist())
    comms = set(commutator_table(B).ravel().tolist())
    gen = closure([B.add.rows], comms | stars)
    try:
        D = sub_brace(B, gen)
    except BraceError as exc:
        raise IdealClosureFailed(f"derived ideal not a sub-brace: {exc}") from exc
    BB = commutator_subgroup(B.add)
    S = closure([B.add.rows], stars)
    product = {B.add.rows[a][b] for a in BB for b in S}
    if product != set(gen):
        raise IdealClosureFailed("derived ideal differs from the setwise product [B,B].[B,gamma(B)]")
    return D


@dataclass(frozen=True, eq=False)
class QuotientBrace:
    parent: SkewBrace
    ideal: SubBrace
    reps: tuple[int, ...]
    coset_of: np.ndarray
    quotient: SkewBrace

    @property
    def order(self) -> int:
        return len(self.reps)

    @cached_property
    def proj(self) -> np.ndarray:
        """Element -> minimal representative of its coset."""
        return np.asarray(self.reps)[self.coset_of]

    def coset(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.flatnonzero(self.coset_of == i))

    @cached_property
    def additive_map(self) -> AbuseMap:
        return AbuseMap(self, "additive")

    @cached_property
    def star_map(self) -> AbuseMap:
        return AbuseMap(self, "star")

    def abuse_map(self, kind: Kind) -> AbuseMap:
        return self.additive_map if kind == "additive" else self.star_map


def quotient_by(B: SkewBrace, I: SubBrace) -> QuotientBrace:
    n = B.order
    add = B.add.table
    members = np.asarray(I.elements)
    left = np.sort(add[:, members], axis=1)  # row x: the coset x.I
    right = np.sort(add[members, :].T, axis=1)
    circ_left = np.sort(B.circ.table[:, members], axis=1)
    coset_of = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(n):
        if coset_of[x] < 0:
            coset_of[left[x]] = len(reps)
            reps.append(x)
    rep_of = np.asarray(reps)[coset_of]
    for label, other in (("right-add", right), ("circ", circ_left)):
        bad = np.flatnonzero((other != left).any(axis=1))
        if len(bad):
            x = int(bad[0])
            raise NotWellDefined(label, int(rep_of[x]), x, 0)

    for label, T in (("add", add), ("circ", B.circ.table)):
        vals = coset_of[T]
        row_bad = np.argwhere(vals != vals[rep_of, :])
        if len(row_bad):
            x, y = map(int, row_bad[0])
            raise NotWellDefined(label, int(rep_of[x]), x, y)
        col_bad = np.argwhere(vals != vals[:, rep_of])
        if len(col_bad):
            x, y = map(int, col_bad[0])
            raise NotWellDefined(label, int(rep_of[y]), y, x)

    r = np.asarray(reps)
    Q = validate_brace(coset_of[add[np.ix_(r, r)]], coset_of[B.circ.table[np.ix_(r, r)]])
    return QuotientBrace(B, I, tuple(reps), coset_of, Q)


def induced_gammabar(Q: QuotientBrace, y: int) -> Perm:
    """``gammabar(yA)(xA) = gamma(y)(x) A`` evaluated on coset indices."""
    g = Q.parent.gamma[y]
    return tuple(int(Q.coset_of[g[x]]) for x in Q.reps)


class AbuseMap:
    """Bracket on cosets, ``<xA, yA> = [x, y]`` or ``<xA, gammabar(yA)> = x * y``.

    Construction checks independence from the chosen representatives on
    every pair of elements.
    """

    def __init__(self, quotient: QuotientBrace, kind: Kind):
        self.quotient = quotient
        self.kind = kind
        B = quotient.parent
        full = commutator_table(B) if kind == "additive" else star_table(B)
        r = np.asarray(quotient.reps)
        self.table = full[np.ix_(r, r)]
        c = quotient.coset_of
        bad = np.argwhere(full != self.table[c[:, None], c[None, :]])
        if len(bad):
            x, y = map(int, bad[0])
            rx = int(r[c[x]])
            raise NotWellDefined(f"{kind} bracket", rx, x, y)

    def __call__(self, xA: int, yA: int) -> int:
        return int(self.table[xA, yA])


def abuse_bracket(Q: QuotientBrace, kind: Kind, xA: int, yA: int) -> int:
    return Q.abuse_map(kind)(xA, yA)


@lru_cache(maxsize=4096)
def corners(B: SkewBrace) -> Corners:
    return Corners(B)


class Corners:
    """The four objects an isoclinism relates, cached per brace."""

    def __init__(self, B: SkewBrace):
        self.brace = B
        self.ann = annihilator(B)
        self.quotient = quotient_by(B, self.ann)
        self.derived = derived_ideal(B)
        pos = np.full(B.order, -1, dtype=np.int64)
        pos[list(self.derived.elements)] = np.arange(len(self.derived))
        # bracket values as positions inside the derived ideal
        self.comm = pos[self.quotient.additive_map.table]
        self.star = pos[self.quotient.star_map.table]
        assert (self.comm >= 0).all() and (self.star >= 0).all()
