"""Dependency-basis inference and the FD+MVD closure of a category graph.

The dependency basis of a seed X within a context universe U is the finest
partition of U - X such that X multidetermines every union of blocks.  It
is computed by block refinement; FDs participate through the FD-to-MVD
promotion rule, and FD consequences are read off the singleton blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FD, MVD, CategoryGraph, DependencySet, SchemaError
from .fdclosure import (
    attribute_closure,
    declared_lhs_sets,
    fd_closure_graph,
    _materialize,
    _member_determined,
    _representative,
)


@dataclass(frozen=True)
class DependencyBasis:
    seed: frozenset[str]
    context: frozenset[str]
    blocks: tuple[frozenset[str], ...]

    def implies(self, rhs) -> bool:
        """X ->> rhs holds iff rhs - X is a union of blocks."""
        residue = frozenset(rhs) - self.seed
        for b in self.blocks:
            if b & residue:
                if not b <= residue:
                    return False
                residue -= b
        return not residue


def dependency_basis(seed, deps: DependencySet, universe,
                     context: str | None = None) -> DependencyBasis:
    """Finest partition of universe - seed multidetermined by the seed.

    Dependencies are relativized first: FDs must lie fully inside the
    universe, MVDs must carry the given context (or, with no context given,
    fit inside the universe).
    """
    seed = frozenset(seed)
    universe = frozenset(universe)
    if not seed <= universe:
        raise SchemaError("dependency_basis: seed outside the universe")

    pairs: list[tuple[frozenset, frozenset]] = []
    for f in deps.canonical_fds():
        if f.lhs | f.rhs <= universe:
            pairs.append((f.lhs, f.rhs))  # FD-MVD promotion
    for m in deps.mvds:
        if context is not None and m.context != context:
            continue
        if m.lhs | m.rhs <= universe:
            pairs.append((m.lhs, m.rhs))

    blocks = [universe - seed] if universe - seed else []
    changed = True
    while changed:
        changed = False
        for w, v in pairs:
            for i, b in enumerate(blocks):
                if b & w:
                    continue
                inside, outside = b & v, b - v
                if inside and outside:
                    blocks[i:i + 1] = [inside, outside]
                    changed = True
                    break
            if changed:
                break
    blocks.sort(key=lambda b: tuple(sorted(b)))
    return DependencyBasis(seed=seed, context=universe, blocks=tuple(blocks))


def mvd_membership(deps: DependencySet, query: MVD, universe) -> bool:
    """Does the query MVD follow from deps over the given context universe?"""
    universe = frozenset(universe)
    if not (query.lhs | query.rhs) <= universe:
        raise SchemaError("mvd_membership: query attributes outside universe")
    basis = dependency_basis(query.lhs, deps, universe, context=query.context)
    return basis.implies(query.rhs)


def fd_rhs_attributes(deps: DependencySet, universe) -> frozenset[str]:
    out = set()
    for f in deps.canonical_fds():
        if f.lhs | f.rhs <= universe:
            out |= f.rhs
    return frozenset(out)


def mixed_closure(seed, deps: DependencySet,
                  contexts: dict[str, frozenset[str]]) -> frozenset[str]:
    """FD closure of a seed under FDs plus context-bound MVDs.

    Alternates the plain FD fixpoint with dependency-basis queries per
    context: a singleton block that is the RHS of some in-context FD is a
    functionally determined attribute (the FD/MVD interaction rule).
    Iterates to mutual stability.
    """
    closure = set(attribute_closure(seed, deps.canonical_fds()).closure)
    changed = True
    while changed:
        changed = False
        for ctx, universe in contexts.items():
            sub = frozenset(closure) & universe
            if not sub:
                continue
            basis = dependency_basis(sub, deps, universe, context=ctx)
            derivable = fd_rhs_attributes(deps, universe)
            for b in basis.blocks:
                if len(b) == 1:
                    (a,) = b
                    if a in derivable and a not in closure:
                        closure.add(a)
                        changed = True
        if changed:
            closure = set(attribute_closure(closure,
                                            deps.canonical_fds()).closure)
    return frozenset(closure)


def identify_mvd_objects(graph: CategoryGraph,
                         deps: DependencySet) -> frozenset[str]:
    """Relationship objects witnessing a nontrivial inferred MVD.

    O is an MVD object when some inferred X ->>_O Y is nontrivial with
    X u Y strictly inside the projection targets of O.  Seeds are the LHS
    sets of the declared MVDs on O; the dependency basis supplies the
    inferred right-hand sides: any proper block gives such a Y, so O
    qualifies exactly when some seed's basis has two or more blocks.
    """
    out = set()
    for m in deps.mvds:
        if not graph.has_object(m.context):
            continue
        universe = graph.projection_targets(m.context)
        if not (m.lhs | m.rhs) <= universe:
            continue
        basis = dependency_basis(m.lhs, deps, universe, context=m.context)
        if len(basis.blocks) >= 2:
            out.add(m.context)
    return frozenset(out)


def fd_mvd_closure_graph(graph: CategoryGraph, fds, mvds,
                         provenance: list | None = None) -> CategoryGraph:
    """Closure under FDs and MVDs: inferred-FD arrows plus MVD-object marks."""
    from .core import graph_to_fds

    fds = tuple(fds)
    mvds = tuple(mvds)
    # only FD left-hand sides are relevant closure seeds; MVD composites
    # stay plain attribute sets for the dependency-basis machinery
    declared = declared_lhs_sets(fds)
    base = list(graph_to_fds(graph)) + list(fds)

    for lhs in sorted(declared, key=lambda s: tuple(sorted(s))):
        if len(lhs) > 1 and _representative(graph, lhs) is None \
                and not _member_determined(lhs, base):
            graph, _ = _materialize(graph, lhs, provenance)

    d_fds = list(graph_to_fds(graph)) + list(fds)
    deps = DependencySet(fds=tuple(d_fds), mvds=mvds)
    contexts = {m.context: graph.projection_targets(m.context) for m in mvds
                if graph.has_object(m.context)}
    object_names = set(graph.object_map)

    seeds: list[frozenset[str]] = []
    seen = set()
    for lhs in [f.lhs for f in d_fds] + [m.lhs for m in mvds]:
        if lhs in seen:
            continue
        seen.add(lhs)
        if len(lhs) == 1 and next(iter(lhs)) in object_names:
            seeds.append(lhs)
        elif lhs in declared:
            seeds.append(lhs)

    from .core import Arrow

    for lhs in sorted(seeds, key=lambda s: tuple(sorted(s))):
        rep = _representative(graph, lhs)
        if rep is None:
            continue
        closure = mixed_closure(lhs, deps, contexts)
        for y in sorted(closure):
            if y == rep or y in lhs or y not in object_names:
                continue
            if not graph.has_arrow(rep, y):
                graph = graph.with_arrow(
                    Arrow(name=f"{rep}_to_{y}", source=rep, target=y))
                if provenance is not None:
                    provenance.append({"arrow": [rep, y],
                                       "rule": "fd-mvd-closure"})
    mvd_objs = identify_mvd_objects(graph, deps)
    if provenance is not None:
        for name in sorted(mvd_objs - graph.mvd_objects):
            provenance.append({"object": name, "rule": "mvd-object"})
    return graph.with_mvd_objects(graph.mvd_objects | mvd_objs)
