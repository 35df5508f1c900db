import pytest

from catnorm import (
    DependencySet,
    SchemaError,
    dependency_basis,
    fd,
    fd_closure_graph,
    fd_mvd_closure_graph,
    identify_mvd_objects,
    graph_to_fds,
    mvd,
    mvd_membership,
)
from catnorm.mvdclosure import mixed_closure


def test_basis_complement():
    deps = DependencySet(mvds=(mvd("A", "B", "U"),))
    basis = dependency_basis({"A"}, deps, {"A", "B", "C", "D"})
    assert set(basis.blocks) == {frozenset("B"), frozenset("CD")}


def test_basis_seed_equals_universe():
    basis = dependency_basis({"A", "B"}, DependencySet(), {"A", "B"})
    assert basis.blocks == ()


def test_basis_fd_promotion():
    deps = DependencySet(fds=(fd("A", "B"),))
    basis = dependency_basis({"A"}, deps, {"A", "B", "C"})
    assert set(basis.blocks) == {frozenset("B"), frozenset("C")}


def test_basis_seed_outside_universe():
    with pytest.raises(SchemaError):
        dependency_basis({"Z"}, DependencySet(), {"A"})


def test_membership_complement():
    deps = DependencySet(mvds=(mvd("A", "B", "X"),))
    q = mvd("A", ["C", "D"], "X")
    assert mvd_membership(deps, q, {"A", "B", "C", "D"})


def test_membership_reflexive():
    assert mvd_membership(DependencySet(), mvd("AB", "B", "X"),
                          {"A", "B", "C"})


def test_membership_transitivity():
    deps = DependencySet(mvds=(mvd("A", "B", "X"), mvd("B", "C", "X")))
    assert mvd_membership(deps, mvd("A", "C", "X"), {"A", "B", "C"})


def test_mixed_closure_fd_mvd_rule(fig6):
    graph, deps = fig6
    all_deps = DependencySet(fds=graph_to_fds(graph), mvds=deps.mvds)
    contexts = {"X": graph.projection_targets("X")}
    closure = mixed_closure({"A"}, all_deps, contexts)
    assert "C" in closure  # A ->> B and B -> C give A -> C
    assert "B" not in closure and "D" not in closure


def test_fd_mvd_closure_fig6(fig6):
    graph, deps = fig6
    closed = fd_mvd_closure_graph(graph, deps.fds, deps.mvds)
    assert closed.arrow_pairs() - graph.arrow_pairs() == {("A", "C")}
    assert closed.mvd_objects == {"X"}


def test_fd_mvd_closure_degenerates_without_mvds(fig5):
    graph, deps = fig5
    a = fd_mvd_closure_graph(graph, deps.fds, ())
    b = fd_closure_graph(graph, deps.fds)
    assert a.arrow_pairs() == b.arrow_pairs()
    assert a.mvd_objects == frozenset()


def test_mvd_object_without_new_fds(fig6):
    graph, _ = fig6
    graph = graph.without_arrow(
        next(a for a in graph.arrows if a.pair == ("B", "C")))
    deps = DependencySet(mvds=(mvd("A", "B", "X"),))
    closed = fd_mvd_closure_graph(graph, (), deps.mvds)
    assert closed.mvd_objects == {"X"}
    assert closed.arrow_pairs() == graph.arrow_pairs()


def test_identify_mvd_objects_requires_nontrivial_split(fig6):
    graph, _ = fig6
    # rhs together with lhs covers pi(X): trivial, so X is not an MVD object
    deps = DependencySet(mvds=(mvd("A", ["B", "C", "D"], "X"),))
    assert identify_mvd_objects(graph, deps) == frozenset()
