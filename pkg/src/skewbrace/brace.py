"""Right skew braces ``(B, ., o)`` on tables.

The gamma function is ``gamma(x): y -> (y o x) . x^-1``; the brace law says
each ``gamma(x)`` is an automorphism of ``(B, .)``.  Composition of gamma
values follows the exponent convention: ``gamma(y) gamma(x)`` applies
``gamma(y)`` first, so the functional equation reads
``gamma(gamma(x)(y) . x) = compose(gamma(y), gamma(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (
    AddNotGroup,
    CircNotGroup,
    ConversionSanityFailed,
    GammaNotEndomorphism,
    GfeViolation,
    GroupError,
    IdentityMismatch,
    LeftAxiomViolated,
    NotAutomorphism,
    BraceError,
)
from .groups import FiniteGroup, Perm, identity_perm, preserves, relabel_table, validate_group


@dataclass(frozen=True, eq=False)
class SkewBrace:
    add: FiniteGroup
    circ: FiniteGroup
    gamma_table: np.ndarray  # row x is gamma(x)
    name: str = ""

    @property
    def order(self) -> int:
        return self.add.order

    @cached_property
    def gamma(self) -> tuple[Perm, ...]:
        return tuple(tuple(row) for row in self.gamma_table.tolist())

    @property
    def add_inv(self) -> list[int]:
        return self.add.inv

    @property
    def circ_inv(self) -> list[int]:
        return self.circ.inv

    @cached_property
    def key(self) -> bytes:
        return self.add.key + self.circ.key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkewBrace) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<SkewBrace{label} of order {self.order}>"

    def relabel(self, perm: Sequence[int]) -> SkewBrace:
        """Image of the brace under the bijection ``perm`` (must fix 0)."""
        assert perm[0] == 0
        return validate_brace(relabel_table(self.add.table, perm),
                              relabel_table(self.circ.table, perm), name=self.name)


def _gamma_table(add: FiniteGroup, circ: np.ndarray) -> np.ndarray:
    # gamma[x, y] = (y o x) . x^-1
    return add.table[circ.T, add.inverses[:, None]]


def validate_brace(add, circ, *, name: str = "") -> SkewBrace:
    """Validate two tables as a right skew brace and cache its gamma function."""
    add_t = np.asarray(add, dtype=np.int64)
    circ_t = np.asarray(circ, dtype=np.int64)
    if add_t.shape != circ_t.shape:
        raise IdentityMismatch(f"tables have different shapes {add_t.shape} and {circ_t.shape}")
    try:
        A = validate_group(add_t, normalize_identity=False)
    except GroupError as exc:
        raise AddNotGroup(f"additive table: {exc}") from exc
    try:
        C = validate_group(circ_t, normalize_identity=False)
    except GroupError as exc:
        raise CircNotGroup(f"multiplicative table: {exc}") from exc
    if A.identity != C.identity:
        raise IdentityMismatch(
            f"additive identity {A.identity} differs from multiplicative identity {C.identity}")
    if A.identity != 0:
        raise IdentityMismatch(f"shared identity is {A.identity}, expected 0; relabel first")

    G = _gamma_table(A, C.table)
    t = A.table
    lhs = G[:, t]  # [x, y, z] -> gamma(x)(y.z)
    rhs = t[G[:, :, None], G[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        raise GammaNotEndomorphism(*map(int, bad[0]))
    return SkewBrace(A, C, G, name)


def gamma_of(B: SkewBrace, x: int) -> Perm:
    return B.gamma[x]


def trivial_brace(G: FiniteGroup) -> SkewBrace:
    return validate_brace(G.table, G.table, name=f"triv({G.name})" if G.name else "")


def gfe_violation(G: FiniteGroup, gamma: Sequence[Sequence[int]]) -> tuple[int, int] | None:
    """First ``(x, y)`` where the functional equation fails, or None."""
    g = np.asarray(gamma, dtype=np.int64)
    z = G.table[g, np.arange(G.order)[:, None]]  # z[x, y] = gamma(x)(y) . x
    lhs = g[z]  # [x, y, :] = gamma(z[x, y])
    rhs = g[:, g]  # [x, y, w] = gamma(x)(gamma(y)(w))
    bad = np.argwhere((lhs != rhs).any(axis=2))
    if len(bad):
        return int(bad[0][0]), int(bad[0][1])
    return None


def check_gfe(G: FiniteGroup, gamma: Sequence[Sequence[int]]) -> tuple[bool, tuple[int, int] | None]:
    bad = gfe_violation(G, gamma)
    return bad is None, bad


def circ_from_gamma(G: FiniteGroup, gamma: Sequence[Sequence[int]], *, name: str = "") -> SkewBrace:
    """Build ``y o x = gamma(x)(y) . x`` from a gamma function on ``G``."""
    g = np.asarray(gamma, dtype=np.int64)
    for x in range(G.order):
        if sorted(g[x].tolist()) != list(range(G.order)) or not preserves(g[x], G.table, G.table):
            raise NotAutomorphism(x)
    bad = gfe_violation(G, g)
    if bad is not None:
        raise GfeViolation(*bad)
    circ = G.table[g.T, np.arange(G.order)[None, :]]  # circ[y, x] = gamma(x)(y) . x
    B = validate_brace(G.table, circ, name=name)
    assert (B.gamma_table == g).all(), "gamma round trip failed"
    return B


def left_law_violation(plus: np.ndarray, circ: np.ndarray, plus_inv: np.ndarray) -> tuple[int, int, int] | None:
    """First triple violating ``-x + x o (y + z) = (-x + x o y) - x + x o z``."""
    lam = plus[plus_inv[:, None], circ]  # lam[x, y] = -x + x o y
    lhs = lam[:, plus]  # [x, y, z] = lam_x(y + z)
    rhs = plus[lam[:, :, None], lam[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(map(int, bad[0]))
    return None


def from_left_convention(plus, circ, *, name: str = "") -> SkewBrace:
    """Convert a left skew brace ``(B, +, o)`` into a right one.

    Uses ``x . y := y + x`` and ``x o' y := y o x``, under which
    ``gamma'(x)`` is the left-convention map ``y -> -x + x o y``.
    """
    plus_t = np.asarray(plus, dtype=np.int64)
    circ_t = np.asarray(circ, dtype=np.int64)
    try:
        P = validate_group(plus_t, normalize_identity=False)
        C = validate_group(circ_t, normalize_identity=False)
    except GroupError as exc:
        raise LeftAxiomViolated(str(exc)) from exc
    if P.identity != C.identity:
        raise LeftAxiomViolated("identities of + and o differ")
    bad = left_law_violation(P.table, C.table, P.inverses)
    if bad is not None:
        raise LeftAxiomViolated("left brace law fails at x=%d, y=%d, z=%d" % bad)
    try:
        B = validate_brace(P.table.T, C.table.T, name=name)
    except BraceError as exc:
        raise ConversionSanityFailed(str(exc)) from exc
    lam = P.table[P.inverses[:, None], C.table]
    if not (B.gamma_table == lam).all():
        raise ConversionSanityFailed("converted gamma differs from the left lambda maps")
    return B


def to_left_convention(B: SkewBrace) -> tuple[np.ndarray, np.ndarray]:
    return B.add.table.T.copy(), B.circ.table.T.copy()


def swap_operations(B: SkewBrace) -> tuple[np.ndarray, np.ndarray]:
    return B.circ.table, B.add.table


def identity_gamma(n: int) -> list[Perm]:
    return [identity_perm(n)] * n
