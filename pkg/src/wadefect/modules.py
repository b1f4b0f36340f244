"""Finitely generated modules over a finite group.

A :class:`GammaModule` presents the abelian group Z^n modulo a relation
lattice, together with one action matrix per designated group generator.
Action matrices for arbitrary elements are derived from the stored
generator words and are only required to satisfy the group law modulo the
relation lattice.

The homology entry points are :func:`h1` (through a free cover: H_1 of a
module is the torsion of the coinvariants of the cover's kernel lattice)
and :func:`h1_bar` (directly from the inhomogeneous bar complex).  The two
must always agree; h1_bar exists to be the independent cross-check.
"""

from __future__ import annotations

from typing import Sequence

from .groups import CayleyGroup, GroupError, Subgroup, subgroup_cayley, subgroup_closure
from .linalg import (
    AbelianPresentation,
    ColumnSolver,
    FinAbInvariants,
    IntMatrix,
    cokernel_invariants,
    hermite_column_form,
    hstack,
    kernel_basis,
)

__all__ = [
    "GammaModule",
    "GammaLattice",
    "FreeCover",
    "ModuleError",
    "DEFAULT_BAR_CAP",
    "validate",
    "free_cover",
    "coinvariants",
    "tate_h_minus1",
    "h1",
    "h1_bar",
    "restrict",
    "norm_one_module",
    "induced_module",
    "trivial_module",
    "free_module",
    "direct_sum",
    "with_doubled_generators",
]

DEFAULT_BAR_CAP = 64


class ModuleError(ValueError):
    """Invalid module data: incompatible action or unstable relation lattice."""


class GammaModule:
    """Z^n modulo a relation lattice, with a group acting by integer matrices."""

    __slots__ = ("group", "n", "relations", "action", "_element_matrices")

    def __init__(self, group: CayleyGroup, n: int, relations: IntMatrix, action: Sequence[IntMatrix]):
        self.group = group
        self.n = int(n)
        self.relations = relations
        self.action = tuple(action)
        self._element_matrices: tuple[IntMatrix, ...] | None = None
        if relations.rows != self.n:
            raise ModuleError(f"relations have {relations.rows} rows for a rank-{self.n} presentation")
        if len(self.action) != len(group.generator_indices):
            raise ModuleError(
                f"need {len(group.generator_indices)} action matrices, got {len(self.action)}"
            )
        for k, mat in enumerate(self.action):
            if mat.rows != self.n or mat.cols != self.n:
                raise ModuleError(f"action matrix {k} is {mat.rows}x{mat.cols}, expected {self.n}x{self.n}")

    @property
    def validated(self) -> bool:
        return self._element_matrices is not None

    def element_matrix(self, g: int) -> IntMatrix:
        """Action matrix of an arbitrary element, derived from its word."""
        validate(self)
        return self._element_matrices[g]

    def element_matrices(self) -> tuple[IntMatrix, ...]:
        validate(self)
        return self._element_matrices

    def __repr__(self) -> str:
        return f"GammaModule(n={self.n}, relations={self.relations.cols}, group_order={self.group.order})"


def _congruent_mod(solver: ColumnSolver, A: IntMatrix, B: IntMatrix) -> bool:
    # A == B up to columns of the relation lattice
    return solver.contains(A - B)


def validate(M: GammaModule) -> None:
    """Check all module invariants; derive and cache per-element action matrices.

    Raises :class:`ModuleError` naming the violating pair when the action
    fails the group law modulo the relations, or when a generator does not
    preserve the relation lattice.  Checking every (element, generator)
    product is equivalent to checking all pairs: words multiply out along
    the BFS tree, and congruences propagate through lattice-stable factors.
    """
    if M.validated:
        return
    G = M.group
    rel_solver = ColumnSolver(M.relations)
    for k, mat in enumerate(M.action):
        if not rel_solver.contains(mat @ M.relations):
            raise ModuleError(
                f"action of generator {k} (element {G.generator_indices[k]}) does not preserve the relations"
            )
    derived: list[IntMatrix | None] = [None] * G.order
    ident = IntMatrix.identity(M.n)
    for g in range(G.order):
        mat = ident
        for k in G.words[g]:
            mat = mat @ M.action[k]
        derived[g] = mat
    if not _congruent_mod(rel_solver, derived[G.identity], ident):
        raise ModuleError("identity element does not act as the identity modulo relations")
    for g in range(G.order):
        for k, gen_elem in enumerate(G.generator_indices):
            product = G.table[g][gen_elem]
            if not _congruent_mod(rel_solver, derived[g] @ M.action[k], derived[product]):
                raise ModuleError(f"incompatible action on the pair ({g}, {gen_elem})")
    M._element_matrices = tuple(derived)


class GammaLattice:
    """Torsion-free lattice with an exact group action.

    Unlike a general module there are no relations, so the action matrices
    must satisfy the group law on the nose.
    """

    __slots__ = ("group", "rank", "matrices")

    def __init__(self, group: CayleyGroup, rank: int, matrices: Sequence[IntMatrix]):
        self.group = group
        self.rank = int(rank)
        self.matrices = tuple(matrices)
        if len(self.matrices) != group.order:
            raise ModuleError("one action matrix per group element is required")

    @classmethod
    def from_module(cls, M: GammaModule) -> "GammaLattice":
        if M.relations.cols:
            raise ModuleError("only a relation-free module is a lattice")
        validate(M)
        return cls(M.group, M.n, M.element_matrices())

    def action(self, g: int) -> IntMatrix:
        return self.matrices[g]


class FreeCover:
    """The exact sequence 0 -> Y -> Z[G]^n -> M -> 0 at the matrix level.

    The middle term has basis (g, i) at index g*n + i (element index major);
    the projection sends (g, i) to g acting on the i-th generator of M.  Y
    is the saturated kernel, with the left-translation action restricted to
    it; since Y is free, its action matrices satisfy the group law exactly.
    """

    __slots__ = ("module", "cover_rank", "projection", "kernel_basis", "kernel_action")

    def __init__(
        self,
        module: GammaModule,
        cover_rank: int,
        projection: IntMatrix,
        kernel_basis: IntMatrix,
        kernel_action: Sequence[IntMatrix],
    ):
        self.module = module
        self.cover_rank = cover_rank
        self.projection = projection
        self.kernel_basis = kernel_basis
        self.kernel_action = tuple(kernel_action)

    @property
    def kernel_lattice(self) -> GammaLattice:
        return GammaLattice(self.module.group, self.kernel_basis.cols, self.kernel_action)


def _cover_shift_rows(G: CayleyGroup, n: int, B: IntMatrix, g: int) -> IntMatrix:
    # left translation by g on Z[G]^n permutes basis blocks: (h, i) -> (g*h, i)
    rows: list[tuple[int, ...]] = [()] * B.rows
    for h in range(G.order):
        target = G.table[g][h]
        for i in range(n):
            rows[target * n + i] = B.row(h * n + i)
    return IntMatrix.from_rows(rows, cols=B.cols)


def free_cover(M: GammaModule) -> "FreeCover":
    """Canonical free cover of M with its kernel lattice and induced action."""
    validate(M)
    G = M.group
    n = M.n
    cover_rank = G.order * n
    projection = hstack([M.element_matrices()[g] for g in range(G.order)], rows=n)
    stacked = hstack([projection, -M.relations])
    K = kernel_basis(stacked)
    top = IntMatrix.from_rows([K.row(i) for i in range(cover_rank)], cols=K.cols)
    basis = hermite_column_form(top)

    expected_rank = cover_rank - cokernel_invariants(
        AbelianPresentation(ambient_rank=n, relations=M.relations)
    ).free_rank
    if basis.cols != expected_rank:
        raise AssertionError(
            f"cover kernel has rank {basis.cols}, exactness requires {expected_rank}"
        )

    solver = ColumnSolver(basis)
    matrices = []
    for g in range(G.order):
        shifted = _cover_shift_rows(G, n, basis, g)
        C = solver.solve(shifted)
        if C is None:
            raise AssertionError("cover kernel is not stable under the group action")
        matrices.append(C)
    return FreeCover(M, cover_rank, projection, basis, matrices)


def coinvariants(lat: GammaLattice, delta: Subgroup) -> AbelianPresentation:
    """Presentation of the coinvariants of `lat` under a subgroup.

    Relations are the columns of (action(g) - 1) for g running over the
    subgroup's generators; generator differences span the same lattice as
    differences over the whole subgroup.
    """
    G = lat.group
    if subgroup_closure(G, delta.generators).elements != delta.elements:
        raise GroupError("subgroup generators do not generate its element set")
    ident = IntMatrix.identity(lat.rank)
    blocks = [lat.action(g) - ident for g in delta.generators]
    relations = hstack(blocks, rows=lat.rank) if blocks else IntMatrix(lat.rank, 0, ())
    return AbelianPresentation(ambient_rank=lat.rank, relations=relations)


def tate_h_minus1(lat: GammaLattice, delta: Subgroup) -> FinAbInvariants:
    """Torsion of the coinvariants: Tate cohomology in degree -1 for a torsion-free module."""
    inv = cokernel_invariants(coinvariants(lat, delta))
    return FinAbInvariants(factors=inv.factors, free_rank=0)


def h1(M: GammaModule, delta: Subgroup) -> FinAbInvariants:
    """First group homology of `delta` with coefficients in M, via the free cover."""
    return tate_h_minus1(free_cover(M).kernel_lattice, delta)


def h1_bar(M: GammaModule, delta: Subgroup, *, cap: int = DEFAULT_BAR_CAP) -> FinAbInvariants:
    """First group homology from the inhomogeneous bar complex C2 -> C1 -> C0.

    Boundary conventions, for a left module:
        d(m ⊗ [g])      = g^{-1} m - m
        d(m ⊗ [g1|g2])  = g1^{-1} m ⊗ [g2] - m ⊗ [g1 g2] + m ⊗ [g1]
    Torsion in M is handled by working with ambient chains modulo
    relation-induced chains.  Independent of the free-cover route.
    """
    validate(M)
    G = M.group
    if subgroup_closure(G, delta.generators).elements != delta.elements:
        raise GroupError("subgroup generators do not generate its element set")
    dl = delta.elements
    size = len(dl)
    if size > cap:
        raise ModuleError(f"bar complex cap exceeded: subgroup order {size} > {cap}")
    pos = {g: i for i, g in enumerate(dl)}
    n = M.n
    mats = M.element_matrices()
    ident = IntMatrix.identity(n)

    d1 = hstack([mats[G.inverses[g]] - ident for g in dl], rows=n)

    c1_rank = n * size
    d2_cols: list[list[int]] = []
    for a in dl:
        inv_a = mats[G.inverses[a]]
        for b in dl:
            ab = G.table[a][b]
            for i in range(n):
                col = [0] * c1_rank
                base_b = pos[b] * n
                for r in range(n):
                    col[base_b + r] += inv_a[r, i]
                col[pos[ab] * n + i] -= 1
                col[pos[a] * n + i] += 1
                d2_cols.append(col)
    d2 = IntMatrix.from_columns(d2_cols, rows=c1_rank)

    rel_cols: list[list[int]] = []
    for a in dl:
        base = pos[a] * n
        for j in range(M.relations.cols):
            col = [0] * c1_rank
            rc = M.relations.column(j)
            for r in range(n):
                col[base + r] = rc[r]
            rel_cols.append(col)
    rel_chains = IntMatrix.from_columns(rel_cols, rows=c1_rank) if rel_cols else IntMatrix(c1_rank, 0, ())

    # cycles: ambient chains whose boundary lands in the relation lattice of M
    K = kernel_basis(hstack([d1, -M.relations]))
    cycles = hermite_column_form(
        IntMatrix.from_rows([K.row(i) for i in range(c1_rank)], cols=K.cols)
    )
    boundaries = hermite_column_form(hstack([d2, rel_chains]))
    X = ColumnSolver(cycles).solve(boundaries)
    if X is None:
        raise AssertionError("bar boundaries escape the cycle lattice")
    inv = cokernel_invariants(AbelianPresentation(ambient_rank=cycles.cols, relations=X))
    if inv.free_rank:
        raise AssertionError("H_1 of a finite group with finitely generated coefficients is finite")
    return FinAbInvariants(factors=inv.factors, free_rank=0)


def restrict(M: GammaModule, delta: Subgroup) -> GammaModule:
    """The same abelian group as a module over the subgroup, rebuilt standalone."""
    validate(M)
    sub = subgroup_cayley(M.group, delta)
    mats = M.element_matrices()
    return GammaModule(
        group=sub,
        n=M.n,
        relations=M.relations,
        action=[mats[g] for g in delta.elements],
    )


def norm_one_module(G: CayleyGroup) -> GammaModule:
    """Augmentation-kernel module of rank |G| - 1.

    Basis (g - e) for g != e in canonical element order, with the action
    h * (g - e) = (hg - e) - (h - e).
    """
    basis = [g for g in range(G.order) if g != G.identity]
    pos = {g: i for i, g in enumerate(basis)}
    n = len(basis)
    action = []
    for h in G.generator_indices:
        cols = []
        for g in basis:
            col = [0] * n
            hg = G.table[h][g]
            if hg != G.identity:
                col[pos[hg]] += 1
            if h != G.identity:
                col[pos[h]] -= 1
            cols.append(col)
        action.append(IntMatrix.from_columns(cols, rows=n))
    return GammaModule(G, n, IntMatrix(n, 0, ()), action)


def induced_module(G: CayleyGroup, delta: Subgroup) -> GammaModule:
    """Permutation module on the left cosets of a subgroup.

    Cosets are indexed by first appearance while scanning elements in
    canonical order, so the basis is deterministic.
    """
    if subgroup_closure(G, delta.generators).elements != delta.elements:
        raise GroupError("subgroup generators do not generate its element set")
    coset_of: dict[int, int] = {}
    reps: list[int] = []
    for g in range(G.order):
        if g in coset_of:
            continue
        for d in delta.elements:
            coset_of[G.table[g][d]] = len(reps)
        reps.append(g)
    n = len(reps)
    action = []
    for h in G.generator_indices:
        cols = []
        for rep in reps:
            col = [0] * n
            col[coset_of[G.table[h][rep]]] = 1
            cols.append(col)
        action.append(IntMatrix.from_columns(cols, rows=n))
    return GammaModule(G, n, IntMatrix(n, 0, ()), action)


def trivial_module(G: CayleyGroup, rank: int = 1) -> GammaModule:
    ident = IntMatrix.identity(rank)
    return GammaModule(G, rank, IntMatrix(rank, 0, ()), [ident] * len(G.generator_indices))


def free_module(G: CayleyGroup, copies: int = 1) -> GammaModule:
    """Z[G]^copies with the left regular action, basis (copy, element)."""
    N = G.order
    n = N * copies
    action = []
    for h in G.generator_indices:
        cols = []
        for c in range(copies):
            for g in range(N):
                col = [0] * n
                col[c * N + G.table[h][g]] = 1
                cols.append(col)
        action.append(IntMatrix.from_columns(cols, rows=n))
    return GammaModule(G, n, IntMatrix(n, 0, ()), action)


def direct_sum(M1: GammaModule, M2: GammaModule) -> GammaModule:
    if M1.group is not M2.group:
        raise ModuleError("direct sum requires modules over the same group")
    n = M1.n + M2.n
    rel_cols = [tuple(c) + (0,) * M2.n for c in M1.relations.columns()]
    rel_cols += [(0,) * M1.n + tuple(c) for c in M2.relations.columns()]
    relations = IntMatrix.from_columns(rel_cols, rows=n) if rel_cols else IntMatrix(n, 0, ())
    action = []
    for a, b in zip(M1.action, M2.action):
        cols = [tuple(c) + (0,) * M2.n for c in a.columns()]
        cols += [(0,) * M1.n + tuple(c) for c in b.columns()]
        action.append(IntMatrix.from_columns(cols, rows=n))
    return GammaModule(M1.group, n, relations, action)


def with_doubled_generators(M: GammaModule) -> GammaModule:
    """An isomorphic presentation on a redundantly doubled generator set.

    Each generator is listed twice; the duplicates are identified by extra
    relations.  Free covers of the result are structurally different from
    covers of M, which makes this the natural cross-check input.
    """
    n = M.n
    n2 = 2 * n
    rel_cols = [tuple(c) + (0,) * n for c in M.relations.columns()]
    for i in range(n):
        col = [0] * n2
        col[i] = 1
        col[n + i] = -1
        rel_cols.append(tuple(col))
    relations = IntMatrix.from_columns(rel_cols, rows=n2)
    action = []
    for a in M.action:
        cols = [tuple(c) + (0,) * n for c in a.columns()]
        cols += [(0,) * n + tuple(c) for c in a.columns()]
        action.append(IntMatrix.from_columns(cols, rows=n2))
    return GammaModule(M.group, n2, relations, action)
