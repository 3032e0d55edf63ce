"""The three predicates whose isoclinism invariance is being tested."""

from __future__ import annotations

import numpy as np

from .brace import SkewBrace, validate_brace
from .errors import BraceError


def is_biskew_direct(B: SkewBrace) -> bool:
    """``(B, o, .)`` is again a skew brace."""
    try:
        validate_brace(B.circ.table, B.add.table)
    except BraceError:
        return False
    return True


def is_biskew_gamma(B: SkewBrace) -> bool:
    """gamma is an anti-homomorphism: ``gamma(y.z)`` applies ``gamma(z)`` then ``gamma(y)``."""
    g, t = B.gamma_table, B.add.table
    return bool((g[t] == g[:, g]).all())


def is_biskew(B: SkewBrace) -> bool:
    direct, via_gamma = is_biskew_direct(B), is_biskew_gamma(B)
    if direct != via_gamma:
        raise AssertionError(f"bi-skew procedures disagree on {B!r}: direct={direct}, gamma={via_gamma}")
    return direct


def is_lambda_homomorphic(B: SkewBrace) -> bool:
    """gamma is a homomorphism: ``gamma(x.y)`` applies ``gamma(x)`` then ``gamma(y)``."""
    g, t = B.gamma_table, B.add.table
    # g[t][x, y, w] = gamma(x.y)(w); g[:, g].transpose -> gamma(y)(gamma(x)(w))
    return bool((g[t] == np.transpose(g[:, g], (1, 0, 2))).all())


def conjugation_table(B: SkewBrace) -> np.ndarray:
    """Row ``t`` is ``x -> x^t = t^-1 x t``."""
    t, inv = B.add.table, B.add.inverses
    return t[t[inv[:, None], np.arange(B.order)[None, :]], np.arange(B.order)[:, None]]


def is_inner(B: SkewBrace) -> tuple[bool, list[int | None]]:
    """Every ``gamma(y)`` is conjugation by some ``t``; minimal witness per ``y``."""
    conj = conjugation_table(B)
    witnesses: list[int | None] = []
    for y in range(B.order):
        hits = np.flatnonzero((conj == B.gamma_table[y]).all(axis=1))
        witnesses.append(int(hits[0]) if len(hits) else None)
    return all(w is not None for w in witnesses), witnesses


def predicates(B: SkewBrace) -> tuple[bool, bool, bool]:
    """``(bi-skew, lambda-homomorphic, inner)``."""
    return is_biskew(B), is_lambda_homomorphic(B), is_inner(B)[0]
