"""Finite groups as explicit multiplication tables.

Elements are integers 0..N-1.  Groups built from permutation generators get
a canonical indexing: breadth-first closure from the identity, applying the
generators in the given order by right multiplication.  That ordering is
what scenario files and action matrices refer to, so it is part of the
contract, not an implementation detail.

Permutations are tuples p with p[i] the image of i, and the product x*y
acts by (x*y)(i) = x(y(i)).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import FinAbInvariants

__all__ = [
    "CayleyGroup",
    "Subgroup",
    "GroupError",
    "DEFAULT_ORDER_CAP",
    "DEFAULT_ASSOC_BOUND",
    "from_permutations",
    "from_table",
    "subgroup_closure",
    "cyclic_subgroups",
    "conjugate_subgroup",
    "abelianization",
    "is_subgroup",
    "is_cyclic_subgroup",
    "full_subgroup",
    "trivial_subgroup",
    "element_order",
    "subgroup_cayley",
]

DEFAULT_ORDER_CAP = 2000
DEFAULT_ASSOC_BOUND = 512


class GroupError(ValueError):
    """Invalid group data: bad table, bad generators, or a cap exceeded."""


class CayleyGroup:
    """A finite group with a full multiplication table.

    `table[i][j]` is the index of g_i * g_j.  `words[i]` is a fixed word in
    the designated generators (by position in `generator_indices`) whose
    left-to-right product is element i.
    """

    __slots__ = ("order", "table", "identity", "inverses", "generator_indices", "words")

    def __init__(self, table, identity, inverses, generator_indices, words):
        object.__setattr__(self, "order", len(table))
        object.__setattr__(self, "table", tuple(tuple(row) for row in table))
        object.__setattr__(self, "identity", int(identity))
        object.__setattr__(self, "inverses", tuple(inverses))
        object.__setattr__(self, "generator_indices", tuple(generator_indices))
        object.__setattr__(self, "words", tuple(tuple(w) for w in words))
        self._check_words()

    def __setattr__(self, name, value):
        raise AttributeError("CayleyGroup is immutable")

    def _check_words(self):
        if len(self.words) != self.order:
            raise GroupError("one word per element is required")
        for i, word in enumerate(self.words):
            x = self.identity
            for k in word:
                if not (0 <= k < len(self.generator_indices)):
                    raise GroupError(f"word for element {i} uses unknown generator position {k}")
                x = self.table[x][self.generator_indices[k]]
            if x != i:
                raise GroupError(f"word for element {i} evaluates to {x}")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"CayleyGroup(order={self.order}, generators={self.generator_indices})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a sorted element set plus a generating subset."""

    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    def __post_init__(self):
        elems = tuple(sorted({int(e) for e in self.elements}))
        gens = tuple(sorted({int(g) for g in self.generators}))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "generators", gens)
        if not set(gens) <= set(elems):
            raise GroupError("subgroup generators must be listed among its elements")

    @property
    def order(self) -> int:
        return len(self.elements)


def _is_permutation(row: Sequence[int], n: int) -> bool:
    return len(row) == n and sorted(row) == list(range(n))


def _validate_latin(table: list[list[int]]) -> None:
    n = len(table)
    for i, row in enumerate(table):
        if not _is_permutation(row, n):
            raise GroupError(f"row {i} is not a permutation of 0..{n - 1}: not a Latin square")
    for j in range(n):
        col = [table[i][j] for i in range(n)]
        if not _is_permutation(col, n):
            raise GroupError(f"column {j} is not a permutation of 0..{n - 1}: not a Latin square")


def _find_identity(table: list[list[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][j] == j for j in range(n)) and all(table[i][e] == i for i in range(n)):
            return e
    raise GroupError("table has no two-sided identity")


def _closure_under_table(table, seed, identity) -> set[int]:
    elems = {identity} | set(seed)
    frontier = list(elems)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(elems):
                for p in (table[a][b], table[b][a]):
                    if p not in elems:
                        elems.add(p)
                        nxt.append(p)
        frontier = nxt
    return elems


def _light_associativity(table, gens) -> tuple[int, int, int] | None:
    # Light's test: with gens generating the magma, checking (x*a)*y == x*(a*y)
    # for a in gens and all x, y settles associativity of the whole table.
    n = len(table)
    for a in gens:
        ta = table[a]
        for x in range(n):
            row_xa = table[table[x][a]]
            row_x = table[x]
            for y in range(n):
                if row_xa[y] != row_x[ta[y]]:
                    return (x, a, y)
    return None


def _generating_set(table, identity) -> list[int]:
    gens: list[int] = []
    closed = {identity}
    for x in range(len(table)):
        if x not in closed:
            gens.append(x)
            closed = _closure_under_table(table, closed | {x}, identity)
    return gens


def from_table(table: Sequence[Sequence[int]], *, assoc_bound: int = DEFAULT_ASSOC_BOUND) -> CayleyGroup:
    """Validate a full multiplication table; generators default to all elements."""
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise GroupError("empty table")
    if any(len(r) != n for r in rows):
        raise GroupError("table is not square")
    for r in rows:
        for e in r:
            if not isinstance(e, int) or isinstance(e, bool) or not (0 <= e < n):
                raise GroupError(f"table entry {e!r} out of range 0..{n - 1}")
    _validate_latin(rows)
    identity = _find_identity(rows)
    if n <= assoc_bound:
        bad = _light_associativity(rows, _generating_set(rows, identity))
        if bad is not None:
            x, a, y = bad
            raise GroupError(f"associativity fails on ({x}, {a}, {y})")
    inverses = []
    for i in range(n):
        j = rows[i].index(identity)
        if rows[j][i] != identity:
            raise GroupError(f"element {i} has no two-sided inverse")
        inverses.append(j)
    return CayleyGroup(
        table=rows,
        identity=identity,
        inverses=inverses,
        generator_indices=range(n),
        words=[(i,) for i in range(n)],
    )


def from_permutations(gens: Sequence[Sequence[int]], *, order_cap: int = DEFAULT_ORDER_CAP) -> CayleyGroup:
    """Close permutation generators into a group with canonical BFS indexing."""
    perms = [tuple(int(v) for v in g) for g in gens]
    if perms:
        degree = len(perms[0])
        for g in perms:
            if not _is_permutation(g, degree):
                raise GroupError(f"generator {g!r} is not a permutation of 0..{degree - 1}")
    else:
        degree = 0

    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    words: list[tuple[int, ...]] = [()]
    pos = 0
    while pos < len(elements):
        x = elements[pos]
        for k, g in enumerate(perms):
            y = tuple(x[g[i]] for i in range(degree))
            if y not in index:
                if len(elements) >= order_cap:
                    raise GroupError(f"group order exceeds the cap of {order_cap}")
                index[y] = len(elements)
                elements.append(y)
                words.append(words[pos] + (k,))
        pos += 1

    n = len(elements)
    table = [[index[tuple(a[b[i]] for i in range(degree))] for b in elements] for a in elements]
    inverses = [row.index(0) for row in table]
    return CayleyGroup(
        table=table,
        identity=0,
        inverses=inverses,
        generator_indices=[index[g] for g in perms],
        words=words,
    )


def _check_indices(G: CayleyGroup, indices) -> None:
    for i in indices:
        if not (0 <= i < G.order):
            raise GroupError(f"element index {i} out of range for a group of order {G.order}")


def subgroup_closure(G: CayleyGroup, seed: Sequence[int]) -> Subgroup:
    """Least subgroup of G containing the seed elements."""
    seed = [int(s) for s in seed]
    _check_indices(G, seed)
    elems = _closure_under_table(G.table, seed, G.identity)
    return Subgroup(elements=tuple(sorted(elems)), generators=tuple(seed))


def element_order(G: CayleyGroup, g: int) -> int:
    _check_indices(G, (g,))
    x = g
    k = 1
    while x != G.identity:
        x = G.table[x][g]
        k += 1
    return k


def _cycle(G: CayleyGroup, g: int) -> tuple[int, ...]:
    elems = {G.identity}
    x = g
    while x != G.identity:
        elems.add(x)
        x = G.table[x][g]
    return tuple(sorted(elems))


def cyclic_subgroups(G: CayleyGroup) -> list[Subgroup]:
    """All distinct cyclic subgroups of G, including the trivial one.

    Deduplicated by element set and returned sorted by element set, so the
    order is deterministic; the stored generator is the least group element
    generating the subgroup.
    """
    found: dict[tuple[int, ...], Subgroup] = {}
    for g in range(G.order):
        key = _cycle(G, g)
        if key not in found:
            found[key] = Subgroup(elements=key, generators=(g,))
    return [found[k] for k in sorted(found)]


def conjugate_subgroup(G: CayleyGroup, H: Subgroup, g: int) -> Subgroup:
    """The conjugate g H g^-1."""
    _check_indices(G, (g,))
    _check_indices(G, H.elements)
    ginv = G.inverses[g]
    conj = lambda h: G.table[G.table[g][h]][ginv]
    return Subgroup(
        elements=tuple(conj(h) for h in H.elements),
        generators=tuple(conj(h) for h in H.generators),
    )


def full_subgroup(G: CayleyGroup) -> Subgroup:
    return Subgroup(elements=tuple(range(G.order)), generators=G.generator_indices)


def trivial_subgroup(G: CayleyGroup) -> Subgroup:
    return Subgroup(elements=(G.identity,), generators=())


def is_subgroup(G: CayleyGroup, H: Subgroup) -> bool:
    """Whether H's element set is closed and its generators generate it."""
    elems = set(H.elements)
    if not elems or not all(0 <= e < G.order for e in elems):
        return False
    if G.identity not in elems:
        return False
    for a in elems:
        if G.inverses[a] not in elems:
            return False
        for b in elems:
            if G.table[a][b] not in elems:
                return False
    return _closure_under_table(G.table, H.generators, G.identity) == elems


def is_cyclic_subgroup(G: CayleyGroup, H: Subgroup) -> bool:
    target = set(H.elements)
    return any(set(_cycle(G, g)) == target for g in H.elements)


def subgroup_cayley(G: CayleyGroup, H: Subgroup) -> CayleyGroup:
    """Rebuild a subgroup as a standalone group, re-indexed by sorted elements."""
    _check_indices(G, H.elements)
    if not is_subgroup(G, H):
        raise GroupError("not a subgroup of this group")
    old = list(H.elements)
    pos = {g: i for i, g in enumerate(old)}
    table = [[pos[G.table[a][b]] for b in old] for a in old]
    return from_table(table)


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _exact_log(value: int, p: int) -> int:
    e = 0
    while value > 1:
        if value % p:
            raise AssertionError(f"{value} is not a power of {p}")
        value //= p
        e += 1
    return e


def _invariants_from_orders(orders: Sequence[int]) -> FinAbInvariants:
    """Invariant factors of a finite abelian group from its element orders."""
    size = len(orders)
    if size == 1:
        return FinAbInvariants()
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(size):
        # lam_conj[j-1] = number of cyclic p-power factors of order >= p^j,
        # read off from counts of elements killed by p^j
        lam_conj: list[int] = []
        prev = 0
        j = 1
        while True:
            killed = sum(1 for o in orders if p**j % o == 0)
            exponent = _exact_log(killed, p)
            if exponent == prev:
                break
            lam_conj.append(exponent - prev)
            prev = exponent
            j += 1
        lam = [sum(1 for c in lam_conj if c >= i) for i in range(1, lam_conj[0] + 1)] if lam_conj else []
        per_prime[p] = lam
    width = max((len(v) for v in per_prime.values()), default=0)
    descending = []
    for i in range(width):
        d = 1
        for p, lam in per_prime.items():
            if i < len(lam):
                d *= p ** lam[i]
        descending.append(d)
    return FinAbInvariants(factors=tuple(reversed(descending)))


def abelianization(G: CayleyGroup) -> FinAbInvariants:
    """Invariant factors of G modulo its commutator subgroup.

    The subgroup generated by all commutators is already normal, so one
    closure suffices; the abelian quotient is then decomposed from the
    orders of its cosets.
    """
    comms = set()
    for a in range(G.order):
        ainv = G.inverses[a]
        for b in range(G.order):
            comms.add(G.table[G.table[G.table[a][b]][ainv]][G.inverses[b]])
    K = set(subgroup_closure(G, sorted(comms)).elements)
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for x in range(G.order):
        if x in coset_of:
            continue
        for k in K:
            coset_of[G.table[x][k]] = len(reps)
        reps.append(x)
    orders = []
    for a in reps:
        x = a
        k = 1
        while x not in K:
            x = G.table[x][a]
            k += 1
        orders.append(k)
    return _invariants_from_orders(orders)
