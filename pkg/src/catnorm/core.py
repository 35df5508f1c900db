"""Category-graph data model, JSON (de)serialization and validity checks.

A schema is a directed graph whose nodes are typed objects (entity,
relationship, attribute) and whose edges are named arrows.  At most one
arrow may exist per ordered node pair (thinness), which makes every
diagram commute by construction.  Declared functional and multivalued
dependencies ride along in a :class:`DependencySet`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

OBJECT_KINDS = ("entity", "relationship", "attribute")

COMPOSITE_SEP = "_"


class SchemaError(Exception):
    """Raised for malformed schema documents or broken preconditions."""


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    kind: str
    is_limit: bool = False
    domain_tag: str | None = None

    def __post_init__(self):
        if not self.name:
            raise SchemaError("object name must be nonempty")
        if self.kind not in OBJECT_KINDS:
            raise SchemaError(f"unknown object kind {self.kind!r} for {self.name!r}")
        if self.is_limit and self.kind != "relationship":
            raise SchemaError(f"limit flag on non-relationship object {self.name!r}")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str
    is_projection: bool = False

    def __post_init__(self):
        if self.source == self.target:
            raise SchemaError(f"arrow {self.name!r} is a self-loop on {self.source!r}")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.source, self.target)


@dataclass(frozen=True)
class FD:
    lhs: frozenset[str]
    rhs: frozenset[str]

    def __post_init__(self):
        if not self.lhs or not self.rhs:
            raise SchemaError("FD sides must be nonempty")

    def __str__(self):
        return f"{','.join(sorted(self.lhs))} -> {','.join(sorted(self.rhs))}"


@dataclass(frozen=True)
class MVD:
    lhs: frozenset[str]
    rhs: frozenset[str]
    context: str

    def __post_init__(self):
        if not self.lhs or not self.rhs:
            raise SchemaError("MVD sides must be nonempty")

    def __str__(self):
        return (f"{','.join(sorted(self.lhs))} ->> "
                f"{','.join(sorted(self.rhs))} [ctx {self.context}]")


def fd(lhs, rhs) -> FD:
    """Shorthand constructor accepting any iterables of names."""
    return FD(frozenset(lhs), frozenset(rhs))


def mvd(lhs, rhs, context: str) -> MVD:
    return MVD(frozenset(lhs), frozenset(rhs), context)


@dataclass(frozen=True)
class DependencySet:
    fds: tuple[FD, ...] = ()
    mvds: tuple[MVD, ...] = ()

    def canonical_fds(self) -> tuple[FD, ...]:
        """Split every FD into singleton-rhs form, dropping duplicates."""
        seen, out = set(), []
        for f in self.fds:
            for a in sorted(f.rhs):
                c = FD(f.lhs, frozenset([a]))
                if c not in seen:
                    seen.add(c)
                    out.append(c)
        return tuple(out)


@dataclass(frozen=True)
class CategoryGraph:
    objects: tuple[ObjectDecl, ...] = ()
    arrows: tuple[Arrow, ...] = ()
    mvd_objects: frozenset[str] = frozenset()

    def __post_init__(self):
        names = [o.name for o in self.objects]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise SchemaError(f"duplicate object name(s): {sorted(dup)}")

    # -- lookups -----------------------------------------------------------

    @property
    def object_map(self) -> dict[str, ObjectDecl]:
        return {o.name: o for o in self.objects}

    def kind_of(self, name: str) -> str:
        return self.object_map[name].kind

    def has_object(self, name: str) -> bool:
        return any(o.name == name for o in self.objects)

    def arrow_pairs(self) -> set[tuple[str, str]]:
        return {a.pair for a in self.arrows}

    def has_arrow(self, source: str, target: str) -> bool:
        return (source, target) in self.arrow_pairs()

    def out_neighbours(self, name: str) -> list[str]:
        """Targets of outgoing arrows, in document order of the targets."""
        targets = {a.target for a in self.arrows if a.source == name}
        return [o.name for o in self.objects if o.name in targets]

    def in_neighbours(self, name: str) -> list[str]:
        sources = {a.source for a in self.arrows if a.target == name}
        return [o.name for o in self.objects if o.name in sources]

    def projection_targets(self, name: str) -> frozenset[str]:
        return frozenset(a.target for a in self.arrows
                         if a.source == name and a.is_projection)

    def relationship_names(self) -> list[str]:
        return [o.name for o in self.objects if o.kind == "relationship"]

    # -- functional updates --------------------------------------------------

    def with_arrow(self, arrow: Arrow) -> "CategoryGraph":
        return replace(self, arrows=self.arrows + (arrow,))

    def without_arrow(self, arrow: Arrow) -> "CategoryGraph":
        return replace(self, arrows=tuple(a for a in self.arrows if a != arrow))

    def with_object(self, obj: ObjectDecl, arrows: tuple[Arrow, ...] = ()) -> "CategoryGraph":
        return replace(self, objects=self.objects + (obj,),
                       arrows=self.arrows + arrows)

    def without_object(self, name: str) -> "CategoryGraph":
        """Drop an object together with every arrow touching it."""
        return replace(
            self,
            objects=tuple(o for o in self.objects if o.name != name),
            arrows=tuple(a for a in self.arrows if name not in a.pair),
            mvd_objects=self.mvd_objects - {name},
        )

    def with_mvd_objects(self, names) -> "CategoryGraph":
        return replace(self, mvd_objects=frozenset(names))


def composite_name(members) -> str:
    """Deterministic name for a materialized composite: sorted, '_'-joined."""
    return COMPOSITE_SEP.join(sorted(members))


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

_TOP_KEYS = {"objects", "arrows", "fds", "mvds", "mvd_objects", "provenance"}
_OBJ_KEYS = {"name", "kind", "limit", "domain"}
_ARROW_KEYS = {"name", "source", "target", "projection"}
_FD_KEYS = {"lhs", "rhs"}
_MVD_KEYS = {"lhs", "rhs", "context"}


def _reject_unknown(d: dict, allowed: set, where: str):
    unknown = set(d) - allowed
    if unknown:
        raise SchemaError(f"unknown key(s) {sorted(unknown)} in {where}")


def parse_schema(text: str) -> tuple[CategoryGraph, DependencySet]:
    """Parse a JSON schema document into a graph plus declared dependencies.

    Performs syntactic and referential checks only; semantic invariants are
    the business of :func:`validate`.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"syntax error at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise SchemaError("top-level value must be an object")
    _reject_unknown(doc, _TOP_KEYS, "document")

    objects = []
    for entry in doc.get("objects", []):
        _reject_unknown(entry, _OBJ_KEYS, f"object {entry.get('name', '?')!r}")
        objects.append(ObjectDecl(
            name=entry["name"],
            kind=entry["kind"],
            is_limit=bool(entry.get("limit", False)),
            domain_tag=entry.get("domain"),
        ))
    graph = CategoryGraph(objects=tuple(objects))
    declared = set(graph.object_map)

    arrows = []
    for entry in doc.get("arrows", []):
        _reject_unknown(entry, _ARROW_KEYS, f"arrow {entry.get('name', '?')!r}")
        for end in (entry["source"], entry["target"]):
            if end not in declared:
                raise SchemaError(f"undeclared object {end}")
        arrows.append(Arrow(
            name=entry["name"],
            source=entry["source"],
            target=entry["target"],
            is_projection=bool(entry.get("projection", False)),
        ))

    def _names(values, where):
        for v in values:
            if v not in declared:
                raise SchemaError(f"undeclared object {v} in {where}")
        return frozenset(values)

    fds = []
    for entry in doc.get("fds", []):
        _reject_unknown(entry, _FD_KEYS, "fd")
        fds.append(FD(_names(entry["lhs"], "fd"), _names(entry["rhs"], "fd")))
    mvds = []
    for entry in doc.get("mvds", []):
        _reject_unknown(entry, _MVD_KEYS, "mvd")
        if entry["context"] not in declared:
            raise SchemaError(f"undeclared object {entry['context']} in mvd context")
        mvds.append(MVD(_names(entry["lhs"], "mvd"), _names(entry["rhs"], "mvd"),
                        entry["context"]))

    graph = CategoryGraph(
        objects=tuple(objects),
        arrows=tuple(arrows),
        mvd_objects=frozenset(_names(doc.get("mvd_objects", []), "mvd_objects")),
    )
    return graph, DependencySet(fds=tuple(fds), mvds=tuple(mvds))


def serialize_schema(graph: CategoryGraph, deps: DependencySet,
                     provenance: list | None = None) -> str:
    """Render a schema document; inverse of :func:`parse_schema`."""
    doc: dict = {"objects": [], "arrows": [], "fds": [], "mvds": []}
    for o in graph.objects:
        entry: dict = {"name": o.name, "kind": o.kind}
        if o.is_limit:
            entry["limit"] = True
        if o.domain_tag is not None:
            entry["domain"] = o.domain_tag
        doc["objects"].append(entry)
    for a in graph.arrows:
        doc["arrows"].append({"name": a.name, "source": a.source,
                              "target": a.target, "projection": a.is_projection})
    for f in deps.fds:
        doc["fds"].append({"lhs": sorted(f.lhs), "rhs": sorted(f.rhs)})
    for m in deps.mvds:
        doc["mvds"].append({"lhs": sorted(m.lhs), "rhs": sorted(m.rhs),
                            "context": m.context})
    if graph.mvd_objects:
        doc["mvd_objects"] = sorted(graph.mvd_objects)
    if provenance is not None:
        doc["provenance"] = provenance
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    severity: str = "error"  # or "warning"


def validate(graph: CategoryGraph, deps: DependencySet) -> list[Violation]:
    """Check semantic invariants; returns a report (no errors = valid).

    Warnings (e.g. an entity with no attribute objects) do not make the
    schema invalid; see :func:`is_valid`.
    """
    report: list[Violation] = []
    objmap = graph.object_map

    pairs: dict[tuple[str, str], list[str]] = {}
    for a in graph.arrows:
        pairs.setdefault(a.pair, []).append(a.name)
        for end in a.pair:
            if end not in objmap:
                report.append(Violation(
                    "undeclared-object",
                    f"arrow {a.name!r} references undeclared object {end!r}"))
        if a.is_projection and a.source in objmap \
                and objmap[a.source].kind != "relationship":
            report.append(Violation(
                "projection-source",
                f"projection arrow {a.name!r} leaves non-relationship "
                f"object {a.source!r}"))
    for (s, t), names in pairs.items():
        if len(names) > 1:
            report.append(Violation(
                "thinness",
                f"multiple arrows {sorted(names)} between {s!r} and {t!r}"))

    for name in sorted(graph.mvd_objects):
        if name not in objmap or objmap[name].kind != "relationship":
            report.append(Violation(
                "mvd-object-kind",
                f"mvd object {name!r} is not a declared relationship object"))

    for m in deps.mvds:
        if m.context not in objmap:
            report.append(Violation(
                "mvd-context", f"MVD context {m.context!r} is undeclared"))
            continue
        if objmap[m.context].kind != "relationship":
            report.append(Violation(
                "mvd-context",
                f"MVD context {m.context!r} is not a relationship object"))
            continue
        pi = graph.projection_targets(m.context)
        missing = (m.lhs | m.rhs) - pi
        if missing:
            report.append(Violation(
                "mvd-containment",
                f"MVD {m} mentions {sorted(missing)} outside the projection "
                f"targets of {m.context!r}"))

    for f in deps.fds:
        missing = (f.lhs | f.rhs) - set(objmap)
        if missing:
            report.append(Violation(
                "fd-undeclared", f"FD {f} references undeclared {sorted(missing)}"))

    for o in graph.objects:
        if o.kind == "relationship" and not graph.projection_targets(o.name):
            report.append(Violation(
                "relationship-no-projections",
                f"relationship object {o.name!r} has no projection arrows",
                severity="warning"))
        if o.kind == "entity":
            has_attr = any(objmap[t].kind == "attribute"
                           for t in graph.out_neighbours(o.name) if t in objmap)
            if not has_attr:
                report.append(Violation(
                    "entity-no-attributes",
                    f"entity object {o.name!r} has no attribute objects",
                    severity="warning"))
    return report


def is_valid(report: list[Violation]) -> bool:
    return not any(v.severity == "error" for v in report)


# ---------------------------------------------------------------------------
# graph -> FD conversion (the first step of both closure algorithms)
# ---------------------------------------------------------------------------

def graph_to_fds(graph: CategoryGraph) -> tuple[FD, ...]:
    """Read the functional dependencies off the graph.

    Each arrow X -> Y contributes {X} -> {Y}; each relationship object R
    with projection targets A1..An contributes the key pair
    {R} -> {A1..An} and {A1..An} -> {R}.
    """
    out: list[FD] = []
    for a in graph.arrows:
        out.append(FD(frozenset([a.source]), frozenset([a.target])))
    for o in graph.objects:
        if o.kind != "relationship":
            continue
        pi = graph.projection_targets(o.name)
        if not pi:
            continue
        out.append(FD(frozenset([o.name]), pi))
        out.append(FD(pi, frozenset([o.name])))
    return tuple(out)
