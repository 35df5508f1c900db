"""Closure scaling check on disjoint entity clusters.

Builds schemas of m objects (m divisible by 5: one entity plus four
attributes per cluster, two FDs each) and times fd_closure_graph.
Growth should stay near-quadratic in m.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from catnorm import FD, Arrow, CategoryGraph, DependencySet, ObjectDecl, \
    fd_closure_graph


@dataclass
class PerfConfig:
    sizes: tuple[int, ...] = (10, 50, 100, 200)
    repeats: int = 3


def cluster_schema(m: int) -> tuple[CategoryGraph, DependencySet]:
    assert m % 5 == 0  # five objects per cluster
    objects, arrows, fds = [], [], []
    for c in range(m // 5):
        e = f"E{c}"
        attrs = [f"a{c}_{i}" for i in range(4)]
        objects.append(ObjectDecl(e, "entity"))
        objects += [ObjectDecl(a, "attribute") for a in attrs]
        arrows += [Arrow(f"f_{e}_{a}", e, a) for a in attrs]
        fds.append(FD(frozenset([attrs[0]]), frozenset([attrs[1]])))
        fds.append(FD(frozenset([attrs[1]]), frozenset([attrs[2]])))
    return (CategoryGraph(objects=tuple(objects), arrows=tuple(arrows)),
            DependencySet(fds=tuple(fds)))


def closure_time(m: int, repeats: int) -> float:
    graph, deps = cluster_schema(m)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fd_closure_graph(graph, deps.fds)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=list(PerfConfig.sizes))
    parser.add_argument("--repeats", type=int, default=PerfConfig.repeats)
    args = parser.parse_args(argv)

    base = None
    print(f"{'m':>6} {'best_s':>10} {'vs_first':>9}")
    for m in args.sizes:
        t = closure_time(m, args.repeats)
        base = base or t
        print(f"{m:>6} {t:>10.6f} {t / base:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
