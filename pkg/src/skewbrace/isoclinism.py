"""Isoclinism of skew braces: witness search, audit, census classification.

A witness is a pair ``(xi, theta)``: ``xi`` is a brace isomorphism between the
annihilator quotients (on coset indices), ``theta`` a brace isomorphism
between the derived ideals (on positions in the sorted element lists).  Both
squares must commute: ``theta`` carries ``<xA, yA>`` to ``<xi(xA), xi(yA)>``
for the additive commutator and for the star commutator.

Since the derived ideal is generated by the bracket values, fixing ``xi``
forces ``theta`` on a generating set, so each ``xi`` admits at most one
``theta``.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np
from networkx.utils import UnionFind

from .brace import SkewBrace
from .errors import InvarianceViolation, TransitivityViolation
from .groups import Perm, _close_map, compose, invert, isomorphism_search, preserves
from .properties import is_biskew, is_inner, is_lambda_homomorphic, predicates
from .structure import (
    Corners,
    commutator_table,
    corners,
    holomorph_commutator_table,
    kernel_gamma,
    mult_commutator_table,
)

log = logging.getLogger(__name__)


def brace_isomorphisms(B1: SkewBrace, B2: SkewBrace, limit: int | None = None) -> list[Perm]:
    """Bijections preserving both operations, sorted by image tuple."""
    return isomorphism_search([B1.add.rows, B1.circ.rows], [B2.add.rows, B2.circ.rows], limit)


def are_isomorphic(B1: SkewBrace, B2: SkewBrace) -> bool:
    return B1.order == B2.order and bool(brace_isomorphisms(B1, B2, limit=1))


def brace_signature(B: SkewBrace) -> tuple:
    """Cheap isomorphism invariant."""
    fixed = (B.gamma_table == np.arange(B.order)).sum(axis=1).tolist()
    per_element = sorted(zip(B.add.element_orders, B.circ.element_orders, fixed))
    return B.order, B.add.is_abelian, B.circ.is_abelian, len(kernel_gamma(B)), tuple(per_element)


@dataclass(frozen=True)
class Isoclinism:
    xi: Perm
    theta: Perm

    def inverse(self) -> Isoclinism:
        return Isoclinism(invert(self.xi), invert(self.theta))

    def then(self, other: Isoclinism) -> Isoclinism:
        """Apply ``self`` first, then ``other``."""
        return Isoclinism(compose(self.xi, other.xi), compose(self.theta, other.theta))

    def to_dict(self, B1: SkewBrace, B2: SkewBrace) -> dict:
        c1, c2 = corners(B1), corners(B2)
        return {
            "xi": list(self.xi),
            "theta": list(self.theta),
            "cosets_1": list(c1.quotient.reps),
            "cosets_2": list(c2.quotient.reps),
            "derived_1": list(c1.derived.elements),
            "derived_2": list(c2.derived.elements),
        }


@lru_cache(maxsize=None)
def isoclinism_invariants(B: SkewBrace) -> tuple:
    """Quantities every witness must preserve; mismatch rules out isoclinism."""
    c = corners(B)
    Q, D = c.quotient.quotient, c.derived.as_brace
    return brace_signature(Q), brace_signature(D), predicates(Q)


def _forced_theta(c1: Corners, c2: Corners, xi: Perm) -> Perm | None:
    D1, D2 = c1.derived.as_brace, c2.derived.as_brace
    k = D1.order
    f = [-1] * k
    used = [False] * k
    f[0] = 0
    used[0] = True
    domain = [0]
    x = np.asarray(xi)
    targets = ((c1.comm, c2.comm[np.ix_(x, x)]), (c1.star, c2.star[np.ix_(x, x)]))
    for src, dst in targets:
        for a, b in zip(src.ravel().tolist(), dst.ravel().tolist()):
            if f[a] < 0:
                if used[b]:
                    return None
                f[a] = b
                used[b] = True
                domain.append(a)
            elif f[a] != b:
                return None
    if not _close_map(f, used, domain, list(domain),
                      [D1.add.rows, D1.circ.rows], [D2.add.rows, D2.circ.rows]):
        return None
    if len(domain) != k:
        return None
    return tuple(f)


def is_isoclinic(B1: SkewBrace, B2: SkewBrace) -> Isoclinism | None:
    """Lexicographically first witness ``(xi, theta)``, or None."""
    if isoclinism_invariants(B1) != isoclinism_invariants(B2):
        return None
    c1, c2 = corners(B1), corners(B2)
    for xi in brace_isomorphisms(c1.quotient.quotient, c2.quotient.quotient):
        theta = _forced_theta(c1, c2, xi)
        if theta is not None:
            return Isoclinism(xi, theta)
    return None


def verify_isoclinism(B1: SkewBrace, B2: SkewBrace, pair: Isoclinism) -> tuple[bool, str | None]:
    """Re-check every condition on a witness by full scan."""
    c1, c2 = corners(B1), corners(B2)
    Q1, Q2 = c1.quotient.quotient, c2.quotient.quotient
    D1, D2 = c1.derived.as_brace, c2.derived.as_brace
    if len(pair.xi) != Q1.order or Q1.order != Q2.order:
        return False, f"shape: xi has {len(pair.xi)} entries, quotients have orders {Q1.order} and {Q2.order}"
    if len(pair.theta) != D1.order or D1.order != D2.order:
        return False, f"shape: theta has {len(pair.theta)} entries, derived ideals have orders {D1.order} and {D2.order}"
    if sorted(pair.xi) != list(range(Q1.order)) or sorted(pair.theta) != list(range(D1.order)):
        return False, "xi or theta is not a bijection"
    for label, a, b in (("add", Q1.add, Q2.add), ("circ", Q1.circ, Q2.circ)):
        if not preserves(pair.xi, a.table, b.table):
            return False, f"xi does not preserve the quotient {label} operation"
    for label, a, b in (("add", D1.add, D2.add), ("circ", D1.circ, D2.circ)):
        if not preserves(pair.theta, a.table, b.table):
            return False, f"theta does not preserve the derived-ideal {label} operation"
    xi, theta = np.asarray(pair.xi), np.asarray(pair.theta)
    for label, m1, m2 in (("additive", c1.comm, c2.comm), ("star", c1.star, c2.star)):
        bad = np.argwhere(theta[m1] != m2[np.ix_(xi, xi)])
        if len(bad):
            i, j = map(int, bad[0])
            return False, f"{label} square fails at coset pair ({i}, {j})"
    return True, None


def check_multiplicative_commutators(B1: SkewBrace, B2: SkewBrace, pair: Isoclinism) -> tuple[bool, str | None]:
    """Multiplicative commutators: land in the derived ideal, descend, commute with the witness."""
    c1, c2 = corners(B1), corners(B2)
    reduced = []
    for label, B, c in (("first", B1, c1), ("second", B2, c2)):
        M = mult_commutator_table(B)
        if not set(M.ravel().tolist()) <= c.derived.as_set:
            return False, f"multiplicative commutators of the {label} brace leave the derived ideal"
        proj = c.quotient.proj
        bad = np.argwhere(M != M[np.ix_(proj, proj)])
        if len(bad):
            x, y = map(int, bad[0])
            return False, f"multiplicative commutator of the {label} brace not constant on cosets at ({x}, {y})"
        pos = np.full(B.order, -1, dtype=np.int64)
        pos[list(c.derived.elements)] = np.arange(len(c.derived))
        r = np.asarray(c.quotient.reps)
        reduced.append(pos[M[np.ix_(r, r)]])
    xi, theta = np.asarray(pair.xi), np.asarray(pair.theta)
    bad = np.argwhere(theta[reduced[0]] != reduced[1][np.ix_(xi, xi)])
    if len(bad):
        i, j = map(int, bad[0])
        return False, f"multiplicative square fails at coset pair ({i}, {j})"
    return True, None


def additive_square_only(B1: SkewBrace, B2: SkewBrace) -> bool:
    """Some pair of brace isomorphisms makes the additive square commute."""
    c1, c2 = corners(B1), corners(B2)
    Q1, Q2 = c1.quotient.quotient, c2.quotient.quotient
    D1, D2 = c1.derived.as_brace, c2.derived.as_brace
    if Q1.order != Q2.order or D1.order != D2.order:
        return False
    thetas = brace_isomorphisms(D1, D2)
    if not thetas:
        return False
    for xi in brace_isomorphisms(Q1, Q2):
        x = np.asarray(xi)
        target = c2.comm[np.ix_(x, x)]
        for theta in thetas:
            if (np.asarray(theta)[c1.comm] == target).all():
                return True
    return False


@dataclass
class Classification:
    braces: list[SkewBrace]
    classes: list[list[int]]
    witnesses: dict[tuple[int, int], Isoclinism] = field(default_factory=dict)

    def class_of(self, i: int) -> int:
        return next(k for k, members in enumerate(self.classes) if i in members)

    def to_dict(self, ids: Sequence[str]) -> dict:
        out = []
        for k, members in enumerate(self.classes):
            head = members[0]
            out.append({
                "id": k,
                "members": [ids[i] for i in members],
                "witnesses": [{"pair": [ids[head], ids[m]],
                               **self.witnesses[(head, m)].to_dict(self.braces[head], self.braces[m])}
                              for m in members[1:]],
            })
        return {"braces": len(self.braces), "classes": out}


_POOL_CENSUS: list[SkewBrace] = []


def _pool_init(census):
    global _POOL_CENSUS
    _POOL_CENSUS = census


def _pool_pair(pair):
    i, j = pair
    return pair, is_isoclinic(_POOL_CENSUS[i], _POOL_CENSUS[j])


def candidate_pairs(census: Sequence[SkewBrace]) -> list[tuple[int, int]]:
    """Pairs ``i < j`` whose isoclinism invariants agree."""
    buckets: dict[tuple, list[int]] = {}
    for i, B in enumerate(census):
        buckets.setdefault(isoclinism_invariants(B), []).append(i)
    return sorted(p for members in buckets.values() for p in itertools.combinations(members, 2))


def pairwise_witnesses(census: Sequence[SkewBrace], jobs: int = 1) -> dict[tuple[int, int], Isoclinism]:
    """Witness for every isoclinic pair ``i < j``."""
    pairs = candidate_pairs(census)
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(jobs, initializer=_pool_init, initargs=(list(census),)) as ex:
            results = list(ex.map(_pool_pair, pairs, chunksize=max(1, len(pairs) // (4 * jobs))))
    else:
        results = [((i, j), is_isoclinic(census[i], census[j])) for i, j in pairs]
    return {p: w for p, w in sorted(results) if w is not None}


def classify(census: Sequence[SkewBrace], jobs: int = 1) -> Classification:
    """Partition into isoclinism classes, checking transitivity on the way."""
    census = list(census)
    witnesses = pairwise_witnesses(census, jobs)
    uf = UnionFind(range(len(census)))
    for i, j in witnesses:
        uf.union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(len(census)):
        groups.setdefault(uf[i], []).append(i)
    classes = sorted(sorted(g) for g in groups.values())
    for members in classes:
        for i, j in itertools.combinations(members, 2):
            if (i, j) not in witnesses:
                raise TransitivityViolation(
                    f"braces {i} and {j} are linked through the class but not directly isoclinic")
        for i, j, k in itertools.combinations(members, 3):
            composite = witnesses[(i, j)].then(witnesses[(j, k)])
            ok, why = verify_isoclinism(census[i], census[k], composite)
            if not ok:
                raise TransitivityViolation(f"composite witness {i}->{j}->{k} fails: {why}")
    log.info("classified %d braces into %d isoclinism classes", len(census), len(classes))
    return Classification(census, classes, witnesses)


def proof_identities(B1: SkewBrace, B2: SkewBrace, pair: Isoclinism) -> list[str]:
    """Re-run the invariance arguments on a concrete witness ``B1 -> B2``.

    For each property that ``B1`` has, the commutator expansion (or, for
    inner, the transported conjugating element) is evaluated in ``B2``.
    Returns the list of failures.
    """
    failures = []
    t, inv = B2.add.table, B2.add.inverses
    H = holomorph_commutator_table(B2)  # H[u, v] = [u, gamma(v)]
    g = B2.gamma_table
    lhs = H[:, t]  # [u, v, w] = [u, gamma(v.w)]
    if is_biskew(B1):
        # [u, gamma(v)] [u, gamma(w)] [[u, gamma(w)], gamma(v)]
        expansion = t[t[H[:, :, None], H[:, None, :]], np.transpose(H[H, :], (0, 2, 1))]
        # [u, gamma(w) gamma(v)] = u^-1 gamma(v)(gamma(w)(u))
        direct = t[inv[:, None, None], np.transpose(g[:, g], (2, 0, 1))]
        if not ((lhs == expansion).all() and (expansion == direct).all()):
            failures.append("bi-skew expansion")
    if is_lambda_homomorphic(B1):
        # [u, gamma(w)] [u, gamma(v)] [[u, gamma(v)], gamma(w)]
        expansion = t[t[H[:, None, :], H[:, :, None]], H[H, :]]
        direct = t[inv[:, None, None], np.transpose(g[:, g], (2, 1, 0))]
        if not ((lhs == expansion).all() and (expansion == direct).all()):
            failures.append("lambda-homomorphic expansion")
    inner, wit = is_inner(B1)
    if inner:
        c1, c2 = corners(B1), corners(B2)
        xi_inv = invert(pair.xi)
        C2 = commutator_table(B2)
        for v in range(B2.order):
            y = c1.quotient.reps[xi_inv[int(c2.quotient.coset_of[v])]]
            tt = wit[y]
            w = c2.quotient.reps[pair.xi[int(c1.quotient.coset_of[tt])]]
            if not (H[:, v] == C2[:, w]).all():
                failures.append(f"inner transport fails at v={v}")
                break
    return failures


def theorem_invariance_report(census: Sequence[SkewBrace], classification: Classification | None = None,
                              *, ids: Sequence[str] | None = None, jobs: int = 1,
                              strict: bool = True) -> dict:
    """Check that the three predicates are constant on every isoclinism class."""
    census = list(census)
    ids = list(ids) if ids is not None else [str(i) for i in range(len(census))]
    cl = classification or classify(census, jobs)
    preds = [predicates(B) for B in census]
    violations: list[dict] = []
    mult_failures: list[dict] = []
    classes = []
    for k, members in enumerate(cl.classes):
        triples = {preds[i] for i in members}
        if len(triples) > 1:
            violations.append({"class": k, "kind": "predicate not constant",
                               "members": [ids[i] for i in members],
                               "predicates": [list(preds[i]) for i in members]})
        for i, j in itertools.combinations(members, 2):
            w = cl.witnesses[(i, j)]
            for a, b, pair in ((i, j, w), (j, i, w.inverse())):
                ok, why = verify_isoclinism(census[a], census[b], pair)
                if not ok:
                    violations.append({"class": k, "kind": "witness", "pair": [ids[a], ids[b]], "detail": why})
                    continue
                for failure in proof_identities(census[a], census[b], pair):
                    violations.append({"class": k, "kind": failure, "pair": [ids[a], ids[b]],
                                       "witness": pair.to_dict(census[a], census[b])})
                ok, why = check_multiplicative_commutators(census[a], census[b], pair)
                if not ok:
                    mult_failures.append({"pair": [ids[a], ids[b]], "detail": why})
        head = members[0]
        classes.append({
            "id": k,
            "members": [ids[i] for i in members],
            "predicates": dict(zip(("bi_skew", "lambda_homomorphic", "inner"), preds[head])),
            "witnesses": [{"pair": [ids[head], ids[m]], **cl.witnesses[(head, m)].to_dict(census[head], census[m])}
                          for m in members[1:]],
        })

    class_of = {i: k for k, members in enumerate(cl.classes) for i in members}
    shape: dict[tuple, list[int]] = {}
    for i, B in enumerate(census):
        shape.setdefault(isoclinism_invariants(B)[:2], []).append(i)
    additive_only = []
    for members in shape.values():
        for i, j in itertools.combinations(members, 2):
            if class_of[i] != class_of[j] and additive_square_only(census[i], census[j]):
                additive_only.append([ids[i], ids[j]])
    additive_only.sort()

    report = {
        "braces": len(census),
        "classes": classes,
        "violations": violations,
        "multiplicative_commutator_failures": mult_failures,
        "additive_square_only_pairs": additive_only,
        "summary": {
            "classes": len(classes),
            "witness_pairs": len(cl.witnesses),
            "violations": len(violations),
            "multiplicative_commutator_failures": len(mult_failures),
            "additive_square_only_pairs": len(additive_only),
        },
    }
    if strict and (violations or mult_failures):
        raise InvarianceViolation(
            f"{len(violations)} invariance violations, {len(mult_failures)} multiplicative commutator failures", report)
    return report
