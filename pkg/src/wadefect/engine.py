"""The defect pipeline.

Given a group, a module, and decomposition subgroups for the places of S
and for the known non-cyclic part of its complement, the defect is the
finite quotient

    N1 / (N1 ∩ N2)

inside the coinvariants of the cover kernel, where N1 joins the torsion
images coming from the non-cyclic S subgroups with the ambient relation
lattice, and N2 does the same for the complement side with every cyclic
subgroup adjoined for free (the Chebotarev step).  Cyclic entries of S are
ignored; they never contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .groups import (
    CayleyGroup,
    Subgroup,
    cyclic_subgroups,
    full_subgroup,
    is_cyclic_subgroup,
    is_subgroup,
)
from .linalg import (
    ColumnSolver,
    FinAbInvariants,
    IntMatrix,
    SubgroupGens,
    finite_quotient,
    hermite_column_form,
    lattice_intersection,
    lattice_sum,
    torsion_generators,
)
from .modules import (
    FreeCover,
    GammaLattice,
    GammaModule,
    ModuleError,
    coinvariants,
    free_cover,
    validate,
)

__all__ = [
    "Scenario",
    "DefectResult",
    "ScenarioError",
    "validate_scenario",
    "local_image",
    "defect",
    "ch1_torus",
    "quick_vanish",
    "reduce_to_noncyclic",
    "verify_cover",
]


class ScenarioError(ValueError):
    """Scenario pieces do not fit together."""


@dataclass(frozen=True)
class Scenario:
    """Input to the defect computation.

    `s_subgroups` lists one decomposition subgroup per place of S
    (repetitions allowed); `sc_subgroups` lists the non-cyclic decomposition
    subgroups known to occur over the complement.  Cyclic subgroups of the
    complement need never be listed: they are always adjoined.
    """

    group: CayleyGroup
    module: GammaModule
    s_subgroups: tuple[Subgroup, ...]
    sc_subgroups: tuple[Subgroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "s_subgroups", tuple(self.s_subgroups))
        object.__setattr__(self, "sc_subgroups", tuple(self.sc_subgroups))


@dataclass(frozen=True)
class DefectResult:
    """A finite abelian group plus bookkeeping about how it was obtained."""

    invariants: FinAbInvariants
    s_nc_used: tuple[int, ...]
    shortcut: Optional[str] = None

    def __post_init__(self):
        if self.invariants.free_rank:
            raise AssertionError("the defect is a finite group; free rank must be 0")


def validate_scenario(sc: Scenario) -> None:
    if sc.module.group is not sc.group:
        raise ScenarioError("module is defined over a different group object")
    validate(sc.module)
    for label, subgroups in (("S", sc.s_subgroups), ("S_complement", sc.sc_subgroups)):
        for k, H in enumerate(subgroups):
            if not is_subgroup(sc.group, H):
                raise ScenarioError(f"{label}[{k}] is not a subgroup of the group")


def local_image(cover: FreeCover, delta: Subgroup) -> SubgroupGens:
    """Image of the local homology in the global coinvariants.

    Torsion generators of the subgroup coinvariants of the cover kernel,
    re-read as vectors of the full-group coinvariant presentation.
    """
    lat = cover.kernel_lattice
    ambient = coinvariants(lat, full_subgroup(lat.group))
    local = coinvariants(lat, delta)
    gens = torsion_generators(local)
    return SubgroupGens(ambient=ambient, generators=gens.generators)


def _gens_matrix(gens: SubgroupGens, rank: int) -> IntMatrix:
    return IntMatrix.from_columns([list(v) for v in gens.generators], rows=rank)


def _image_quotient(
    lat: GammaLattice,
    s_subgroups: Sequence[Subgroup],
    sc_subgroups: Sequence[Subgroup],
) -> tuple[FinAbInvariants, tuple[int, ...]]:
    G = lat.group
    ambient = coinvariants(lat, full_subgroup(G))
    rank = ambient.ambient_rank
    base = hermite_column_form(ambient.relations)

    def image(H: Subgroup) -> IntMatrix:
        return _gens_matrix(torsion_generators(coinvariants(lat, H)), rank)

    s_nc = tuple(k for k, H in enumerate(s_subgroups) if not is_cyclic_subgroup(G, H))
    numerator = base
    for k in s_nc:
        numerator = lattice_sum(numerator, image(s_subgroups[k]))

    denominator = base
    for H in sc_subgroups:
        if not is_cyclic_subgroup(G, H):
            denominator = lattice_sum(denominator, image(H))
    for C in cyclic_subgroups(G):
        denominator = lattice_sum(denominator, image(C))

    inv = finite_quotient(numerator, lattice_intersection(numerator, denominator))
    return inv, s_nc


def reduce_to_noncyclic(sc: Scenario) -> Scenario:
    """Drop cyclic entries from the S list; the defect is unchanged."""
    G = sc.group
    kept = tuple(H for H in sc.s_subgroups if not is_cyclic_subgroup(G, H))
    return Scenario(sc.group, sc.module, kept, sc.sc_subgroups)


def _is_detectably_free(M: GammaModule) -> bool:
    # relation-free, every element acts by a permutation matrix, and no
    # nonidentity element fixes a basis vector: then the basis splits into
    # regular orbits and the module is free
    if M.relations.cols:
        return False
    G = M.group
    if M.n % G.order:
        return False
    validate(M)
    for g in range(G.order):
        mat = M.element_matrices()[g]
        images = []
        for j in range(M.n):
            col = mat.column(j)
            ones = [i for i, e in enumerate(col) if e == 1]
            if len(ones) != 1 or any(e not in (0, 1) for e in col):
                return False
            images.append(ones[0])
        if sorted(images) != list(range(M.n)):
            return False
        if g != G.identity and any(images[j] == j for j in range(M.n)):
            return False
    return True


def quick_vanish(sc: Scenario) -> Optional[DefectResult]:
    """Vanishing criteria that force a trivial defect, or None.

    Fires when the complement list contains the whole group, when every S
    entry is cyclic, or when the module is detectably free (permutation
    basis with a free action).
    """
    validate_scenario(sc)
    G = sc.group
    s_nc = tuple(
        k for k, H in enumerate(sc.s_subgroups) if not is_cyclic_subgroup(G, H)
    )
    trivial = FinAbInvariants()
    if any(len(H.elements) == G.order for H in sc.sc_subgroups):
        return DefectResult(trivial, s_nc, shortcut="complement-full-group")
    if not s_nc:
        return DefectResult(trivial, s_nc, shortcut="all-cyclic-S")
    if _is_detectably_free(sc.module):
        return DefectResult(trivial, s_nc, shortcut="free-module")
    return None


def defect(sc: Scenario, *, use_shortcuts: bool = True) -> DefectResult:
    """The weak-approximation defect of a scenario, as invariant factors."""
    validate_scenario(sc)
    if use_shortcuts:
        short = quick_vanish(sc)
        if short is not None:
            return short
    cover = free_cover(sc.module)
    inv, s_nc = _image_quotient(cover.kernel_lattice, sc.s_subgroups, sc.sc_subgroups)
    return DefectResult(inv, s_nc, shortcut=None)


def ch1_torus(
    group: CayleyGroup,
    y_module: GammaModule,
    s_subgroups: Sequence[Subgroup],
    sc_subgroups: Sequence[Subgroup],
) -> FinAbInvariants:
    """Torus-side pipeline: the cocharacter lattice is used directly, no cover."""
    if y_module.group is not group:
        raise ScenarioError("cocharacter module is defined over a different group object")
    if y_module.relations.cols:
        raise ModuleError("a torus cocharacter module must be relation-free")
    validate(y_module)
    for k, H in enumerate(tuple(s_subgroups) + tuple(sc_subgroups)):
        if not is_subgroup(group, H):
            raise ScenarioError(f"subgroup {k} is not a subgroup of the group")
    lat = GammaLattice.from_module(y_module)
    inv, _ = _image_quotient(lat, tuple(s_subgroups), tuple(sc_subgroups))
    return inv


def verify_cover(cover: FreeCover) -> None:
    """Deep consistency checks for a free cover; raises AssertionError on failure.

    The kernel action must satisfy the group law exactly, and the
    projection must kill the kernel modulo the module relations.
    """
    G = cover.module.group
    mats = cover.kernel_action
    for g in range(G.order):
        for h in range(G.order):
            if mats[g] @ mats[h] != mats[G.table[g][h]]:
                raise AssertionError(f"kernel action violates the group law on ({g}, {h})")
    rel = ColumnSolver(cover.module.relations)
    if not rel.contains(cover.projection @ cover.kernel_basis):
        raise AssertionError("projection does not kill the cover kernel")
