"""Hand-built catalog of all groups of order at most 16, as explicit tables."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .errors import UnknownOrder
from .groups import FiniteGroup, validate_group

MAX_CATALOG_ORDER = 16


def from_operation(elements: Sequence[Hashable], mul: Callable, name: str = "") -> FiniteGroup:
    """Tabulate ``mul`` on ``elements``; the first element must be the identity."""
    index = {e: i for i, e in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    G = validate_group(table, normalize_identity=False, name=name)
    assert G.identity == 0, f"{name}: first element is not the identity"
    return G


def generated(gens: Sequence[Hashable], mul: Callable, identity: Hashable, name: str = "") -> FiniteGroup:
    """Group generated by ``gens`` under ``mul``, elements in breadth-first order."""
    elements = [identity]
    seen = {identity}
    i = 0
    while i < len(elements):
        for g in gens:
            h = mul(elements[i], g)
            if h not in seen:
                seen.add(h)
                elements.append(h)
        i += 1
    return from_operation(elements, mul, name)


def cyclic(n: int) -> FiniteGroup:
    return from_operation(range(n), lambda a, b: (a + b) % n, f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    elements = list(itertools.product(range(G.order), range(H.order)))
    return from_operation(
        elements,
        lambda a, b: (G.rows[a[0]][b[0]], H.rows[a[1]][b[1]]),
        name or f"{G.name}x{H.name}",
    )


def metacyclic(m: int, k: int, r: int, name: str) -> FiniteGroup:
    """``C_m : C_k`` where the generator of ``C_k`` acts as multiplication by ``r``."""
    assert pow(r, k, m) == 1 % m

    def mul(a, b):
        return ((a[0] + pow(r, a[1], m) * b[0]) % m, (a[1] + b[1]) % k)

    return from_operation(list(itertools.product(range(m), range(k))), mul, name)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    return metacyclic(n, 2, n - 1, "S3" if n == 3 else f"D{n}")


def dicyclic(m: int, name: str) -> FiniteGroup:
    """Order 4m: ``a^(2m) = 1``, ``x^2 = a^m``, ``x a x^-1 = a^-1``; elements ``a^i x^j``."""
    N = 2 * m

    def mul(p, q):
        i, j = p
        k, l = q
        if j == 0:
            return ((i + k) % N, l)
        # a^i x a^k x^l = a^(i-k) x^(1+l)
        if l == 0:
            return ((i - k) % N, 1)
        return ((i - k + m) % N, 0)

    return from_operation(list(itertools.product(range(N), range(2))), mul, name)


def alternating4() -> FiniteGroup:
    perms = [p for p in itertools.permutations(range(4))
             if sum(p[i] > p[j] for i in range(4) for j in range(i + 1, 4)) % 2 == 0]
    return from_operation(perms, lambda p, q: tuple(q[i] for i in p), "A4")


def pauli() -> FiniteGroup:
    """Central product C4 o D4, realised by the single-qubit Pauli matrices."""
    def mul(A, B):
        (a, b), (c, d) = A
        (e, f), (g, h) = B
        return ((_cx(a, e, b, g), _cx(a, f, b, h)), (_cx(c, e, d, g), _cx(c, f, d, h)))

    one = (1, 0)
    zero = (0, 0)
    I = ((one, zero), (zero, one))
    X = ((zero, one), (one, zero))
    Z = ((one, zero), (zero, (-1, 0)))
    iI = (((0, 1), zero), (zero, (0, 1)))
    return generated([X, Z, iI], mul, I, "C4oD4")


def _cx(a, b, c, d):
    # a*b + c*d over Gaussian integers stored as (re, im)
    re = a[0] * b[0] - a[1] * b[1] + c[0] * d[0] - c[1] * d[1]
    im = a[0] * b[1] + a[1] * b[0] + c[0] * d[1] + c[1] * d[0]
    return (re, im)


def klein_by_c4() -> FiniteGroup:
    """``(C2 x C2) : C4``, the generator of C4 swapping the two C2 factors."""
    def mul(p, q):
        a, b, s = p
        c, d, t = q
        if s % 2:
            c, d = d, c
        return ((a + c) % 2, (b + d) % 2, (s + t) % 4)

    return from_operation(list(itertools.product(range(2), range(2), range(4))), mul, "C2^2:C4")


def _elementary(p: int, k: int) -> FiniteGroup:
    G = cyclic(p)
    for _ in range(k - 1):
        G = direct_product(G, cyclic(p))
    return FiniteGroup(G.table, G.inverses, 0, f"C{p}^{k}")


def _named(G: FiniteGroup, name: str) -> FiniteGroup:
    return FiniteGroup(G.table, G.inverses, 0, name)


def _build(order: int) -> list[FiniteGroup]:
    C = cyclic
    if order == 1:
        return [C(1)]
    if order in (2, 3, 5, 7, 11, 13):
        return [C(order)]
    if order == 4:
        return [C(4), _elementary(2, 2)]
    if order == 6:
        return [C(6), dihedral(3)]
    if order == 8:
        return [C(8), _named(direct_product(C(4), C(2)), "C4xC2"), _elementary(2, 3),
                dihedral(4), dicyclic(2, "Q8")]
    if order == 9:
        return [C(9), _elementary(3, 2)]
    if order == 10:
        return [C(10), dihedral(5)]
    if order == 12:
        return [C(12), _named(direct_product(C(6), C(2)), "C6xC2"), alternating4(),
                dihedral(6), dicyclic(3, "Dic3")]
    if order == 14:
        return [C(14), dihedral(7)]
    if order == 15:
        return [C(15)]
    if order == 16:
        V = _elementary(2, 2)
        return [
            C(16),
            _named(direct_product(C(4), C(4)), "C4xC4"),
            _named(direct_product(C(8), C(2)), "C8xC2"),
            _named(direct_product(C(4), V), "C4xC2^2"),
            _elementary(2, 4),
            dihedral(8),
            dicyclic(4, "Q16"),
            metacyclic(8, 2, 3, "SD16"),
            metacyclic(8, 2, 5, "M16"),
            metacyclic(4, 4, 3, "C4:C4"),
            _named(direct_product(C(2), dihedral(4)), "C2xD4"),
            _named(direct_product(C(2), dicyclic(2, "Q8")), "C2xQ8"),
            pauli(),
            klein_by_c4(),
        ]
    raise UnknownOrder(f"no catalog entry for order {order} (catalog covers 1..{MAX_CATALOG_ORDER})")


@lru_cache(maxsize=None)
def groups_of_order(order: int) -> tuple[FiniteGroup, ...]:
    """Every group of the given order up to isomorphism, in a fixed order."""
    return tuple(_build(order))


def group_by_name(name: str) -> FiniteGroup:
    for n in range(1, MAX_CATALOG_ORDER + 1):
        for G in groups_of_order(n):
            if G.name == name:
                return G
    raise KeyError(name)
