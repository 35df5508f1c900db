"""First and second reduced representations (redundant-arrow removal and
derivable-object elimination)."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import (
    FD,
    MVD,
    Arrow,
    CategoryGraph,
    DependencySet,
    ObjectDecl,
    SchemaError,
    graph_to_fds,
)
from .fdclosure import attribute_closure, derivable_without, fd_closure_graph
from .mvdclosure import dependency_basis, fd_mvd_closure_graph, identify_mvd_objects


@dataclass
class ReductionTrace:
    removed_arrows: list = field(default_factory=list)       # (arrow, path text)
    decomposed_objects: list = field(default_factory=list)   # (name, mvd, (o1, o2))
    removed_limit_objects: list = field(default_factory=list)

    def to_json(self) -> list:
        out = []
        for arrow, why in self.removed_arrows:
            out.append({"event": "removed-arrow",
                        "arrow": [arrow.source, arrow.target],
                        "justification": why})
        for name, m, (o1, o2) in self.decomposed_objects:
            out.append({"event": "decomposed-object", "object": name,
                        "mvd": {"lhs": sorted(m.lhs), "rhs": sorted(m.rhs),
                                "context": m.context},
                        "into": [o1, o2]})
        for name in self.removed_limit_objects:
            out.append({"event": "removed-limit-object", "object": name})
        return out


def _derivation_path(graph: CategoryGraph, source: str, target: str) -> str:
    """Shortest arrow path witnessing that source still reaches target."""
    frontier = [(source, [source])]
    seen = {source}
    while frontier:
        node, path = frontier.pop(0)
        for a in sorted(graph.arrows, key=lambda a: a.pair):
            if a.source != node or a.target in seen:
                continue
            if a.target == target:
                return " -> ".join(path + [target])
            seen.add(a.target)
            frontier.append((a.target, path + [a.target]))
    return "via relationship key dependencies"


def _removal_order(graph: CategoryGraph) -> list[Arrow]:
    composed = [a for a in graph.arrows if not a.is_projection]
    projections = [a for a in graph.arrows if a.is_projection]
    key = lambda a: a.pair
    return sorted(composed, key=key) + sorted(projections, key=key)


def _key_prunable(graph: CategoryGraph, arrow: Arrow, fds) -> bool:
    """An arrow out of a relationship object is redundant when its target
    already follows from the remaining projection targets.  Routes through
    the source itself are excluded; they would let the source's own key
    dependency justify shrinking that very key."""
    if graph.object_map[arrow.source].kind != "relationship":
        return False
    rest = graph.without_arrow(arrow)
    base = rest.projection_targets(arrow.source)
    if not base:
        return False
    deps = [FD(frozenset([a.source]), frozenset([a.target]))
            for a in rest.arrows]
    for o in rest.objects:
        if o.kind != "relationship":
            continue
        pi = rest.projection_targets(o.name)
        if not pi:
            continue
        deps.append(FD(frozenset([o.name]), pi))
        if o.name != arrow.source:  # the source's own key must not help
            deps.append(FD(pi, frozenset([o.name])))
    deps.extend(fds)
    return arrow.target in attribute_closure(base, deps).closure


def _prune_redundant_arrows(graph: CategoryGraph, fds) -> CategoryGraph:
    for arrow in _removal_order(graph):
        if arrow not in graph.arrows:
            continue
        if arrow.is_projection:
            # never shrink a projection set on the strength of the key
            # dependency it defines
            removable = _key_prunable(graph, arrow, fds)
        else:
            removable = derivable_without(graph, arrow, fds) \
                or _key_prunable(graph, arrow, fds)
        if removable:
            graph = graph.without_arrow(arrow)
    return graph


def _prune_to_fixpoint(graph: CategoryGraph, close_fn, fds) -> CategoryGraph:
    """Alternate pruning with re-closure until the result is stable.

    A single greedy pass is order-sensitive: pruning a projection arrow
    strengthens its source's key dependency, and the closure of the pruned
    graph can then justify a different greedy outcome.  Iterating makes the
    reduction a fixpoint of prune-then-close, hence idempotent."""
    prev = None
    for _ in range(64):
        pruned = _prune_redundant_arrows(graph, fds)
        state = (pruned.arrow_pairs(),
                 frozenset(a.pair for a in pruned.arrows if a.is_projection),
                 frozenset(o.name for o in pruned.objects))
        if state == prev:
            return pruned
        prev = state
        graph = close_fn(pruned)
    raise SchemaError("arrow pruning did not reach a fixpoint")


def _record_removed(baseline: CategoryGraph, final: CategoryGraph,
                    trace: ReductionTrace) -> None:
    kept = final.arrow_pairs()
    for arrow in sorted(baseline.arrows, key=lambda a: a.pair):
        if arrow.pair not in kept:
            trace.removed_arrows.append(
                (arrow, _derivation_path(final, arrow.source, arrow.target)))


def first_reduced(graph: CategoryGraph, fds) -> tuple[CategoryGraph, ReductionTrace]:
    """Closure under the FDs, then removal of every redundant arrow."""
    trace = ReductionTrace()
    fds = tuple(fds)
    closed = fd_closure_graph(graph, fds)
    reduced = _prune_to_fixpoint(closed, lambda g: fd_closure_graph(g, fds),
                                 fds)
    _record_removed(closed, reduced, trace)
    return reduced, trace


def is_derivable(name: str, graph: CategoryGraph) -> bool:
    """Derivable relationship object: a limit or MVD object with no incoming
    arrow whose non-projection outgoing arrows all factor through a
    projection."""
    if not graph.has_object(name):
        raise SchemaError(f"unknown object {name!r}")
    decl = graph.object_map[name]
    if not (decl.is_limit or name in graph.mvd_objects):
        return False
    if graph.in_neighbours(name):
        return False
    pairs = graph.arrow_pairs()
    projections = graph.projection_targets(name)
    for a in graph.arrows:
        if a.source != name or a.is_projection:
            continue
        if not any((y, a.target) in pairs for y in projections):
            return False
    return True


_TRAILING_DIGITS = re.compile(r"\d+$")


def _split_names(graph: CategoryGraph, name: str) -> tuple[str, str]:
    """O splits into O1/O2; counters continue across nested decompositions."""
    base = _TRAILING_DIGITS.sub("", name) or name
    used = 0
    for o in graph.objects:
        if o.name.startswith(base):
            m = _TRAILING_DIGITS.search(o.name)
            if m and o.name == base + m.group():
                used = max(used, int(m.group()))
    first, second = used + 1, used + 2
    return f"{base}{first}", f"{base}{second}"


def decompose_mvd_object(graph: CategoryGraph, name: str,
                         m: MVD) -> tuple[CategoryGraph, tuple[str, str]]:
    """Split a derivable MVD object along X ->> Y into X u Y and O - Y."""
    if m.context != name:
        raise SchemaError(f"MVD context {m.context!r} does not match {name!r}")
    if not is_derivable(name, graph):
        raise SchemaError(f"object {name!r} is not derivable")
    pi = graph.projection_targets(name)
    first_members = m.lhs | m.rhs
    second_members = pi - m.rhs
    n1, n2 = _split_names(graph, name)
    graph = graph.without_object(name)
    for new_name, members in ((n1, first_members), (n2, second_members)):
        arrows = tuple(Arrow(name=f"{new_name}__{t}", source=new_name,
                             target=t, is_projection=True)
                       for t in sorted(members))
        graph = graph.with_object(
            ObjectDecl(name=new_name, kind="relationship"), arrows=arrows)
    return graph, (n1, n2)


def _recontextualize(mvds, old: str, graph: CategoryGraph,
                     names: tuple[str, str]) -> tuple[MVD, ...]:
    """Re-home MVDs after a split: an MVD lands in every fragment containing
    its attributes; those straddling the split are satisfied and dropped."""
    out = []
    for m in mvds:
        if m.context != old:
            out.append(m)
            continue
        for new_name in names:
            if m.lhs | m.rhs <= graph.projection_targets(new_name):
                out.append(MVD(m.lhs, m.rhs, new_name))
    return tuple(out)


def _decomposition_candidates(graph: CategoryGraph, fds, mvds):
    """Derivable MVD objects with a usable split MVD, lexicographically
    ordered on (context, lhs, rhs).  The split right-hand side is the
    smallest dependency-basis block of a declared seed."""
    deps = DependencySet(fds=tuple(graph_to_fds(graph)) + tuple(fds),
                         mvds=tuple(mvds))
    marked = identify_mvd_objects(graph, deps)
    graph = graph.with_mvd_objects(marked)
    candidates = []
    for m in mvds:
        if m.context not in marked or not is_derivable(m.context, graph):
            continue
        universe = graph.projection_targets(m.context)
        basis = dependency_basis(m.lhs, deps, universe, context=m.context)
        if len(basis.blocks) < 2:
            continue
        block = min(basis.blocks, key=lambda b: tuple(sorted(b)))
        candidates.append(MVD(m.lhs, block, m.context))
    candidates.sort(key=lambda c: (c.context, tuple(sorted(c.lhs)),
                                   tuple(sorted(c.rhs))))
    return graph, candidates


def _remove_objects(graph: CategoryGraph, fds, mvds,
                    trace: ReductionTrace) -> CategoryGraph:
    mvds = tuple(mvds)
    while True:
        graph, candidates = _decomposition_candidates(graph, fds, mvds)
        if not candidates:
            break
        chosen = candidates[0]
        graph, names = decompose_mvd_object(graph, chosen.context, chosen)
        trace.decomposed_objects.append((chosen.context, chosen, names))
        mvds = _recontextualize(mvds, chosen.context, graph, names)

    for o in list(graph.objects):
        if o.is_limit and is_derivable(o.name, graph):
            graph = graph.without_object(o.name)
            trace.removed_limit_objects.append(o.name)
    return graph


def second_reduced(graph: CategoryGraph, fds,
                   mvds) -> tuple[CategoryGraph, ReductionTrace]:
    """Closure under FDs and MVDs, derivable-object elimination, then the
    redundant-arrow pass."""
    trace = ReductionTrace()
    fds, mvds = tuple(fds), tuple(mvds)
    closed = fd_mvd_closure_graph(graph, fds, mvds)
    stripped = _remove_objects(closed, fds, mvds, trace)
    reduced = _prune_to_fixpoint(
        stripped, lambda g: fd_mvd_closure_graph(g, fds, mvds), fds)
    _record_removed(stripped, reduced, trace)
    return reduced, trace
