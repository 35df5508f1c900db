"""Normal-form verifiers: BCNF, improved BCNF (restorable attributes),
chase-backed 4NF, and XML NF over DTD path dependencies."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .chase import DEFAULT_UNIVERSE_BOUND, chase
from .core import CategoryGraph, DependencySet, SchemaError
from .emit import DtdSchema, RelationalSchema, RelationDecl
from .fdclosure import attribute_closure

BCNF_SORT_BOUND = 12
FOURNF_SORT_BOUND = 8


@dataclass(frozen=True)
class PathFD:
    """Dot-path dependency over a DTD (paths may end in "@attr" or "#P")."""
    lhs: frozenset[str]
    rhs: str

    def __str__(self):
        return f"{','.join(sorted(self.lhs))} -> {self.rhs}"


@dataclass
class NfReport:
    subject: str
    verdict: str  # satisfied | violated | unknown
    witnesses: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"subject": self.subject, "verdict": self.verdict,
                "witnesses": self.witnesses}


def _subsets(items, max_size=None):
    items = sorted(items)
    top = len(items) if max_size is None else max_size
    for k in range(1, top + 1):
        yield from (frozenset(c) for c in combinations(items, k))


def _closure_of(seed, fds) -> frozenset[str]:
    return attribute_closure(seed, fds).closure


def is_superkey(x, sort_set, fds) -> bool:
    return sort_set <= _closure_of(x, fds)


def check_bcnf(rel: RelationDecl, deps: DependencySet) -> NfReport:
    """Every nontrivial projected FD X -> A must have X a superkey."""
    sort_set = rel.sort_set()
    if len(sort_set) > BCNF_SORT_BOUND:
        raise SchemaError(
            f"relation {rel.name} has {len(sort_set)} attributes, over the "
            f"BCNF bound of {BCNF_SORT_BOUND}")
    fds = deps.canonical_fds()
    report = NfReport(subject=rel.name, verdict="satisfied")
    witnessed: set[str] = set()
    for x in _subsets(sort_set):
        closure = _closure_of(x, fds)
        if sort_set <= closure:
            continue
        for a in sorted((closure & sort_set) - x):
            if a in witnessed:
                continue  # keep only the minimal-lhs witness per attribute
            witnessed.add(a)
            report.witnesses.append({
                "dependency": f"{','.join(sorted(x))} -> {a}",
                "reason": f"{','.join(sorted(x))} is not a superkey of "
                          f"{rel.name}"})
    if report.witnesses:
        report.verdict = "violated"
    return report


def check_improved_bcnf(schema: RelationalSchema,
                        deps: DependencySet) -> NfReport:
    """No non-key attribute may be restorable from dependencies that do not
    involve its own relation."""
    fds = deps.canonical_fds()
    report = NfReport(subject="schema", verdict="satisfied")
    for rel in schema.relations:
        sort_set = rel.sort_set()
        if not rel.candidate_keys:
            continue
        key = rel.candidate_keys[0]
        external = [f for f in fds if not (f.lhs | f.rhs <= sort_set)]
        if not external:
            continue
        closure = _closure_of(key, external)
        for b in sorted(sort_set - key):
            if b in closure:
                report.witnesses.append({
                    "dependency": f"{','.join(sorted(key))} -> {b}",
                    "reason": f"attribute {b} of {rel.name} is restorable "
                              f"from dependencies outside {rel.name}"})
    if report.witnesses:
        report.verdict = "violated"
    return report


def check_4nf(rel: RelationDecl, deps: DependencySet) -> NfReport:
    """Every implied nontrivial MVD X ->> Y over sort(R) must have X a
    superkey.  One chase per candidate X; every Y is read off its tableau."""
    sort_set = rel.sort_set()
    if len(sort_set) > FOURNF_SORT_BOUND:
        raise SchemaError(
            f"relation {rel.name} has {len(sort_set)} attributes, over the "
            f"4NF bound of {FOURNF_SORT_BOUND}")
    fds = deps.canonical_fds()
    report = NfReport(subject=rel.name, verdict="satisfied")
    attrs_sorted = sorted(sort_set)
    for x in _subsets(sort_set, max_size=len(sort_set) - 1):
        if is_superkey(x, sort_set, fds):
            continue
        rows, r1, r2, attrs = chase(deps, x, sort_set)
        idx = {a: i for i, a in enumerate(attrs)}
        witness = None
        for y in _subsets(sort_set - x):
            if x | y == sort_set:
                continue  # trivial
            xy = x | y
            want = tuple(r1[idx[a]] if a in xy else r2[idx[a]]
                         for a in attrs_sorted)
            if want in rows:
                witness = y
                break
        if witness is not None:
            report.witnesses.append({
                "dependency": f"{','.join(sorted(x))} ->> "
                              f"{','.join(sorted(witness))}",
                "reason": f"{','.join(sorted(x))} is not a superkey of "
                          f"{rel.name}"})
    if report.witnesses:
        report.verdict = "violated"
    return report


# ---------------------------------------------------------------------------
# XML NF
# ---------------------------------------------------------------------------

def derive_xml_fds(graph: CategoryGraph, dtd: DtdSchema) -> list[PathFD]:
    """Path dependencies induced by the graph's arrows in the emitted DTD.

    An arrow O1 -> O2 lands either on a leaf child element of O1 (value
    dependency between the #PCDATA loci) or on the @O2_ID reference
    attribute of O1.
    """
    out: list[PathFD] = []
    for a in graph.arrows:
        o1, o2 = a.source, a.target
        if o2 in dtd.content.get(o1, ()):
            out.append(PathFD(frozenset([f"ε.{o1}.#P"]),
                              f"ε.{o1}.{o2}.#P"))
        elif f"@{o2}_ID" in dtd.tag_attrs.get(o1, ()):
            out.append(PathFD(frozenset([f"ε.{o1}.@ID"]),
                              f"ε.{o1}.@{o2}_ID"))
        else:
            raise SchemaError(
                f"internal error: arrow {o1} -> {o2} has no locus in the DTD")
    return out


def _path_depth(path: str) -> int:
    parts = path.split(".")
    return len([p for p in parts[1:] if not p.startswith("@") and p != "#P"])


def check_xml_nf(dtd: DtdSchema, fds) -> NfReport:
    """Arenas-Libkin condition: every X -> p.@ID or X -> p.#P must also give
    X -> p.  Decided on the emitter-generated fragment; anything else is
    reported as unknown rather than guessed."""
    report = NfReport(subject="dtd", verdict="satisfied")
    unknown = False
    for f in fds:
        if not (f.rhs.endswith(".#P") or f.rhs.endswith(".@ID")):
            continue  # condition only constrains value-carrying targets
        if f.rhs in f.lhs:
            continue  # trivial
        if len(f.lhs) != 1:
            unknown = True
            report.witnesses.append({"dependency": str(f),
                                     "reason": "composite lhs outside the "
                                               "decidable fragment"})
            continue
        (x,) = f.lhs
        if x.endswith(".@ID"):
            continue  # an ID determines its element
        if x.endswith(".#P"):
            if _path_depth(x) <= 1:
                continue  # once-stored value under the root determines it
            report.witnesses.append({
                "dependency": str(f),
                "reason": f"{x} does not determine its element path"})
        elif "@" in x:
            report.witnesses.append({
                "dependency": str(f),
                "reason": f"reference attribute {x} does not determine "
                          f"its element path"})
        elif "#P" not in x:
            continue  # plain element path determines itself
        else:
            unknown = True
            report.witnesses.append({"dependency": str(f),
                                     "reason": "unrecognized path form"})
    violated = [w for w in report.witnesses
                if "fragment" not in w["reason"]
                and "unrecognized" not in w["reason"]]
    if violated:
        report.verdict = "violated"
    elif unknown:
        report.verdict = "unknown"
    return report
