"""Built-in scenarios.

The Klein entries model a biquadratic extension whose only non-cyclic
decomposition groups sit at two ramified places, acting on the norm-one
torus module of rank 3.  Expected invariant factors are frozen here and
re-verified by `wadefect selfcheck`.
"""

from __future__ import annotations

from .groups import full_subgroup, subgroup_closure
from .modules import free_module, induced_module, norm_one_module
from .scenario_io import scenario_document
from .zoo import klein

__all__ = ["CATALOG_EXPECTED", "catalog_names", "catalog_document", "describe"]

KLEIN_GENS = [[1, 0, 3, 2], [2, 3, 0, 1]]

_DESCRIPTIONS = {
    "klein-norm-one-both-places": (
        "Klein four-group, norm-one module of rank 3; S holds both places with "
        "full decomposition group, nothing non-cyclic over the complement."
    ),
    "klein-norm-one-one-place": (
        "Same module, but S holds only one of the two full places; the other "
        "one lies over the complement and kills the defect."
    ),
    "klein-norm-one-complement-full": (
        "Both full places in S and the full group also listed over the "
        "complement; the defect vanishes."
    ),
    "quasi-trivial-free": (
        "Free module Z[G] over the Klein four-group; the defect vanishes for "
        "every choice of places."
    ),
    "perm-module-coset": (
        "Coset permutation module of rank 2 over the Klein four-group (an "
        "induced, hence quasi-trivial, torus); the defect vanishes."
    ),
}

# invariant factors each entry must produce, re-checked by selfcheck
CATALOG_EXPECTED = {
    "klein-norm-one-both-places": (2,),
    "klein-norm-one-one-place": (),
    "klein-norm-one-complement-full": (),
    "quasi-trivial-free": (),
    "perm-module-coset": (),
}


def _klein_norm_one(s_full: int, sc_full: int) -> dict:
    G = klein()
    full = full_subgroup(G)
    return scenario_document(
        permutation_generators=KLEIN_GENS,
        module=norm_one_module(G),
        s_subgroups=[full] * s_full,
        sc_subgroups=[full] * sc_full,
    )


def _build(name: str) -> dict:
    G = klein()
    full = full_subgroup(G)
    if name == "klein-norm-one-both-places":
        return _klein_norm_one(2, 0)
    if name == "klein-norm-one-one-place":
        return _klein_norm_one(1, 1)
    if name == "klein-norm-one-complement-full":
        return _klein_norm_one(2, 1)
    if name == "quasi-trivial-free":
        return scenario_document(
            permutation_generators=KLEIN_GENS,
            module=free_module(G),
            s_subgroups=[full, full],
            sc_subgroups=[],
        )
    if name == "perm-module-coset":
        order2 = subgroup_closure(G, (1,))
        return scenario_document(
            permutation_generators=KLEIN_GENS,
            module=induced_module(G, order2),
            s_subgroups=[full],
            sc_subgroups=[],
        )
    raise KeyError(name)


def catalog_names() -> list[str]:
    return sorted(_DESCRIPTIONS)


def describe(name: str) -> str:
    return _DESCRIPTIONS[name]


def catalog_document(name: str) -> dict:
    """The scenario document for a catalog entry; KeyError for unknown names."""
    if name not in _DESCRIPTIONS:
        raise KeyError(name)
    return _build(name)
