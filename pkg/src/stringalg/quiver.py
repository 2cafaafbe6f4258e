"""Bound quivers: the data model, axiom validators and path machinery.

A bound quiver is a finite directed graph together with a list of zero
relations.  Relations are either monomial (a path that vanishes) or
commutativity relations (two parallel paths are identified, coefficient
fixed to 1).  Relation paths are stored in traversal order: the first
applied arrow comes first, so the classical composition ``beta . alpha``
is the tuple ``(alpha, beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

MONOMIAL = "monomial"
COMMUTATIVITY = "commutativity"


class QuiverError(ValueError):
    """Raised on malformed quiver data or invalid operations."""


class ParseError(QuiverError):
    """Raised on malformed quiver files; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    tgt: str


@dataclass(frozen=True)
class Relation:
    """A zero relation, stored as arrow-name tuples in traversal order."""

    kind: str
    path1: tuple[str, ...]
    path2: tuple[str, ...] = ()

    def arrows(self) -> tuple[str, ...]:
        return self.path1 + self.path2

    def key(self) -> tuple:
        return (self.kind, self.path1, self.path2)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check; ``holds`` iff ``witnesses`` is empty."""

    holds: bool
    witnesses: tuple[str, ...] = ()

    @staticmethod
    def from_witnesses(witnesses: Sequence[str]) -> "Verdict":
        return Verdict(not witnesses, tuple(witnesses))


class BoundQuiver:
    """Immutable bound quiver.

    Vertex and arrow declaration order is significant: it fixes the letter
    ordering used by every canonical form downstream.
    """

    def __init__(
        self,
        name: str,
        vertices: Sequence[str],
        arrows: Sequence[Arrow],
        relations: Sequence[Relation] = (),
    ):
        self.name = name
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        self.relations = tuple(relations)
        self._validate()
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}
        self.arrow_by_name = {a.name: a for a in self.arrows}
        self._outgoing: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        self._incoming: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._outgoing[a.src].append(a)
            self._incoming[a.tgt].append(a)
        self.monomials = tuple(r.path1 for r in self.relations if r.kind == MONOMIAL)
        self._max_rel_len = max((len(p) for p in self.monomials), default=0)

    # -- construction checks -------------------------------------------------

    def _validate(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError(f"duplicate vertex name in quiver {self.name!r}")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError(f"duplicate arrow name in quiver {self.name!r}")
        vs = set(self.vertices)
        if vs & set(names):
            raise QuiverError("vertex and arrow names must be disjoint")
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise QuiverError(f"arrow {a.name!r} references a missing vertex")
        by_name = {a.name: a for a in self.arrows}
        for r in self.relations:
            for path in (r.path1,) + ((r.path2,) if r.kind == COMMUTATIVITY else ()):
                if len(path) < 2:
                    raise QuiverError(f"relation path {path} shorter than 2")
                for x, y in zip(path, path[1:]):
                    if x not in by_name or y not in by_name:
                        raise QuiverError(f"relation references unknown arrow in {path}")
                    if by_name[x].tgt != by_name[y].src:
                        raise QuiverError(
                            f"non-composable relation path {path}: "
                            f"{x} ends at {by_name[x].tgt}, {y} starts at {by_name[y].src}"
                        )
            if r.kind == COMMUTATIVITY:
                p1, p2 = r.path1, r.path2
                if not p2:
                    raise QuiverError("commutativity relation needs two paths")
                s1, e1 = by_name[p1[0]].src, by_name[p1[-1]].tgt
                s2, e2 = by_name[p2[0]].src, by_name[p2[-1]].tgt
                if (s1, e1) != (s2, e2):
                    raise QuiverError("parallel paths must share start and end")
                i1 = {by_name[x].tgt for x in p1[:-1]}
                i2 = {by_name[x].tgt for x in p2[:-1]}
                if i1 & i2:
                    raise QuiverError("parallel paths must not share interior vertices")
            elif r.kind != MONOMIAL:
                raise QuiverError(f"unknown relation kind {r.kind!r}")

    # -- basic structure -----------------------------------------------------

    def outgoing(self, v: str) -> list[Arrow]:
        return self._outgoing[v]

    def incoming(self, v: str) -> list[Arrow]:
        return self._incoming[v]

    def degree(self, v: str) -> int:
        return len(self._incoming[v]) + len(self._outgoing[v])

    def is_connected(self) -> bool:
        return len(self.component_vertex_sets()) <= 1

    def component_vertex_sets(self) -> list[set[str]]:
        """Connected components of the underlying undirected graph."""
        seen: set[str] = set()
        comps = []
        neighbours: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            neighbours[a.src].add(a.tgt)
            neighbours[a.tgt].add(a.src)
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in neighbours[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def components(self) -> list["BoundQuiver"]:
        """Split into connected sub-bound-quivers, in vertex order."""
        sets = self.component_vertex_sets()
        if len(sets) <= 1:
            return [self]
        sets.sort(key=lambda s: min(self.vertex_index[v] for v in s))
        out = []
        for i, vs in enumerate(sets):
            out.append(self.restrict(vs, name=f"{self.name}.c{i}"))
        return out

    def restrict(self, vertex_set: set[str], name: str | None = None) -> "BoundQuiver":
        """Full subquiver on ``vertex_set``; relations with lost arrows drop."""
        vs = [v for v in self.vertices if v in vertex_set]
        ar = [a for a in self.arrows if a.src in vertex_set and a.tgt in vertex_set]
        keep = {a.name for a in ar}
        rel = [r for r in self.relations if all(x in keep for x in r.arrows())]
        return BoundQuiver(name or self.name, vs, ar, rel)

    # -- the ideal -----------------------------------------------------------

    def path_in_ideal(self, path: Sequence[str]) -> bool:
        """A path vanishes iff it contains a monomial generator as a factor.

        Commutativity relations never kill a path on their own.
        """
        n = len(path)
        for gen in self.monomials:
            g = len(gen)
            if g > n:
                continue
            for i in range(n - g + 1):
                if tuple(path[i : i + g]) == gen:
                    return True
        return False

    def is_path(self, path: Sequence[str]) -> bool:
        by = self.arrow_by_name
        if not path or any(x not in by for x in path):
            return False
        return all(by[x].tgt == by[y].src for x, y in zip(path, path[1:]))

    # -- serialization -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"quiver {self.name}"]
        lines.append("vertices: " + " ".join(self.vertices))
        for a in self.arrows:
            lines.append(f"arrow {a.name}: {a.src} -> {a.tgt}")
        for r in self.relations:
            if r.kind == MONOMIAL:
                lines.append("rel " + " ".join(r.path1))
            else:
                lines.append("comrel " + " ".join(r.path1) + " = " + " ".join(r.path2))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        rels = []
        for r in self.relations:
            if r.kind == MONOMIAL:
                rels.append({"kind": MONOMIAL, "path": list(r.path1)})
            else:
                rels.append(
                    {"kind": COMMUTATIVITY, "path1": list(r.path1), "path2": list(r.path2)}
                )
        return {
            "name": self.name,
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in self.arrows],
            "relations": rels,
        }

    def rename(self, name: str) -> "BoundQuiver":
        return BoundQuiver(name, self.vertices, self.arrows, self.relations)

    # -- equality is structural ----------------------------------------------

    def structure_key(self) -> tuple:
        return (
            self.vertices,
            self.arrows,
            tuple(sorted(r.key() for r in self.relations)),
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, BoundQuiver) and self.structure_key() == other.structure_key()

    def __hash__(self) -> int:
        return hash(self.structure_key())

    def __repr__(self) -> str:
        return (
            f"BoundQuiver({self.name!r}, |Q0|={len(self.vertices)},"
            f" |Q1|={len(self.arrows)}, rels={len(self.relations)})"
        )


# -- parsing ------------------------------------------------------------------


def parse_quiver(text: str, require_connected: bool = True) -> BoundQuiver:
    """Parse the line-oriented quiver format.

    Grammar: a ``quiver <name>`` header, one or more ``vertices:`` lines,
    ``arrow <id>: <src> -> <tgt>`` lines and relation lines
    ``rel a b ...`` / ``comrel a b ... = c d ...`` with paths written in
    traversal order.  ``#`` starts a comment.
    """
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    relations: list[Relation] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("quiver "):
                if name is not None:
                    raise ParseError("duplicate quiver header", lineno)
                name = line.split(None, 1)[1].strip()
                if not name:
                    raise ParseError("empty quiver name", lineno)
            elif line.startswith("vertices:"):
                vertices.extend(line[len("vertices:") :].split())
            elif line.startswith("arrow "):
                body = line[len("arrow ") :]
                if ":" not in body or "->" not in body:
                    raise ParseError("expected 'arrow <id>: <src> -> <tgt>'", lineno)
                arrow_name, rest = body.split(":", 1)
                src, tgt = rest.split("->", 1)
                arrows.append(Arrow(arrow_name.strip(), src.strip(), tgt.strip()))
            elif line.startswith("rel "):
                relations.append(Relation(MONOMIAL, tuple(line[4:].split())))
            elif line.startswith("comrel "):
                body = line[len("comrel ") :]
                if "=" not in body:
                    raise ParseError("expected 'comrel <path> = <path>'", lineno)
                left, right = body.split("=", 1)
                relations.append(
                    Relation(COMMUTATIVITY, tuple(left.split()), tuple(right.split()))
                )
            else:
                raise ParseError(f"unrecognised directive: {line!r}", lineno)
        except ParseError:
            raise
        except QuiverError as exc:
            raise ParseError(str(exc), lineno) from exc
    if name is None:
        raise ParseError("missing 'quiver <name>' header")
    if not vertices:
        raise ParseError("quiver declares no vertices")
    try:
        q = BoundQuiver(name, vertices, arrows, relations)
    except QuiverError as exc:
        raise ParseError(str(exc)) from exc
    if require_connected and not q.is_connected():
        raise ParseError(f"quiver {name!r} is not connected")
    return q


# -- validators ----------------------------------------------------------------


def validate_special_biserial(q: BoundQuiver) -> Verdict:
    """Degree bounds plus unique non-vanishing compositions per arrow."""
    witnesses: list[str] = []
    for v in q.vertices:
        if len(q.incoming(v)) > 2:
            witnesses.append(f"vertex {v}: in-degree {len(q.incoming(v))} > 2")
        if len(q.outgoing(v)) > 2:
            witnesses.append(f"vertex {v}: out-degree {len(q.outgoing(v))} > 2")
    for a in q.arrows:
        succ = [b.name for b in q.outgoing(a.tgt) if not q.path_in_ideal((a.name, b.name))]
        if len(succ) > 1:
            witnesses.append(f"arrow {a.name}: nonzero compositions with {succ}")
        pred = [b.name for b in q.incoming(a.src) if not q.path_in_ideal((b.name, a.name))]
        if len(pred) > 1:
            witnesses.append(f"arrow {a.name}: nonzero compositions after {pred}")
    return Verdict.from_witnesses(witnesses)


def validate_string_algebra(q: BoundQuiver) -> Verdict:
    witnesses = list(validate_special_biserial(q).witnesses)
    for r in q.relations:
        if r.kind != MONOMIAL:
            witnesses.append(f"non-monomial relation {r.path1} = {r.path2}")
    return Verdict.from_witnesses(witnesses)


def validate_gentle(q: BoundQuiver) -> Verdict:
    witnesses = list(validate_string_algebra(q).witnesses)
    for r in q.relations:
        if r.kind == MONOMIAL and len(r.path1) != 2:
            witnesses.append(f"relation {r.path1} not quadratic")
    gens = {p for p in q.monomials if len(p) == 2}
    for a in q.arrows:
        killed_after = [b.name for b in q.outgoing(a.tgt) if (a.name, b.name) in gens]
        if len(killed_after) > 1:
            witnesses.append(f"arrow {a.name}: two relations {killed_after} end it")
        killed_before = [b.name for b in q.incoming(a.src) if (b.name, a.name) in gens]
        if len(killed_before) > 1:
            witnesses.append(f"arrow {a.name}: two relations {killed_before} start it")
    return Verdict.from_witnesses(witnesses)


def nodes(q: BoundQuiver) -> set[str]:
    """Vertices that are neither sinks nor sources with all through paths zero."""
    out = set()
    for v in q.vertices:
        ins, outs = q.incoming(v), q.outgoing(v)
        if not ins or not outs:
            continue
        if all(q.path_in_ideal((a.name, b.name)) for a in ins for b in outs):
            out.add(v)
    return out


def _composition_graph(q: BoundQuiver) -> dict[tuple[str, ...], list[tuple[str, ...]]]:
    """Finite-state graph of nonzero path windows.

    States are nonzero paths of length < max relation length (at least 1);
    an edge appends one arrow keeping the window nonzero.  Cycles correspond
    to arbitrarily long nonzero paths.
    """
    w = max(q._max_rel_len - 1, 1)
    graph: dict[tuple[str, ...], list[tuple[str, ...]]] = {}
    stack = [(a.name,) for a in q.arrows if not q.path_in_ideal((a.name,))]
    seen = set(stack)
    while stack:
        state = stack.pop()
        graph[state] = []
        last = q.arrow_by_name[state[-1]]
        for b in q.outgoing(last.tgt):
            ext = state + (b.name,)
            if q.path_in_ideal(ext):
                continue
            nxt = ext[-w:] if len(ext) > w else ext
            graph[state].append(nxt)
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return graph


def is_finite_dimensional(q: BoundQuiver) -> bool:
    """True iff only finitely many paths avoid the monomial relations."""
    graph = _composition_graph(q)
    # iterative cycle detection (colour marking)
    colour: dict[tuple[str, ...], int] = {}
    for start in graph:
        if colour.get(start):
            continue
        stack: list[tuple[tuple[str, ...], Iterator]] = [(start, iter(graph[start]))]
        colour[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                c = colour.get(nxt, 0)
                if c == 1:
                    return False
                if c == 0:
                    colour[nxt] = 1
                    stack.append((nxt, iter(graph.get(nxt, []))))
                    advanced = True
                    break
            if not advanced:
                colour[node] = 2
                stack.pop()
    return True


def nonzero_paths(q: BoundQuiver) -> list[tuple[str, ...]]:
    """All paths of length >= 1 avoiding the relations, in canonical order.

    Requires ``is_finite_dimensional(q)``.
    """
    if not is_finite_dimensional(q):
        raise QuiverError(f"quiver {q.name!r} is not finite dimensional")
    out: list[tuple[str, ...]] = []
    stack = [(a.name,) for a in q.arrows if not q.path_in_ideal((a.name,))]
    while stack:
        path = stack.pop()
        out.append(path)
        last = q.arrow_by_name[path[-1]]
        for b in q.outgoing(last.tgt):
            ext = path + (b.name,)
            if not q.path_in_ideal(ext):
                stack.append(ext)
    out.sort(key=lambda p: (len(p), tuple(q.arrow_index[x] for x in p)))
    return out


# -- quotients -----------------------------------------------------------------


def quotient_by_arrow(q: BoundQuiver, arrow: str, name: str | None = None) -> BoundQuiver:
    """Kill one arrow; relations mentioning it become implied and drop."""
    if arrow not in q.arrow_by_name:
        raise QuiverError(f"no arrow {arrow!r} in {q.name!r}")
    ar = [a for a in q.arrows if a.name != arrow]
    rel = [r for r in q.relations if arrow not in r.arrows()]
    return BoundQuiver(name or f"{q.name}/{arrow}", q.vertices, ar, rel)


def quotient_by_vertex(q: BoundQuiver, vertex: str, name: str | None = None) -> BoundQuiver:
    """Kill one vertex together with all incident arrows."""
    if vertex not in q.vertex_index:
        raise QuiverError(f"no vertex {vertex!r} in {q.name!r}")
    vs = [v for v in q.vertices if v != vertex]
    ar = [a for a in q.arrows if vertex not in (a.src, a.tgt)]
    keep = {a.name for a in ar}
    rel = [r for r in q.relations if all(x in keep for x in r.arrows())]
    return BoundQuiver(name or f"{q.name}/{vertex}", vs, ar, rel)


def quotient_by_path(q: BoundQuiver, path: Sequence[str], name: str | None = None) -> BoundQuiver:
    """Impose one extra monomial relation on a currently nonzero path."""
    path = tuple(path)
    if not q.is_path(path):
        raise QuiverError(f"{path} is not a composable path in {q.name!r}")
    if q.path_in_ideal(path):
        raise QuiverError(f"path {path} already vanishes in {q.name!r}")
    rel = list(q.relations) + [Relation(MONOMIAL, path)]
    return BoundQuiver(name or f"{q.name}/path", q.vertices, q.arrows, rel)


def quotient_by_parallel_pair(
    q: BoundQuiver, path1: Sequence[str], path2: Sequence[str], name: str | None = None
) -> BoundQuiver:
    """Impose a coefficient-1 commutativity relation between parallel paths."""
    p1, p2 = tuple(path1), tuple(path2)
    for p in (p1, p2):
        if not q.is_path(p):
            raise QuiverError(f"{p} is not a composable path in {q.name!r}")
        if q.path_in_ideal(p):
            raise QuiverError(f"path {p} already vanishes in {q.name!r}")
    rel = list(q.relations) + [Relation(COMMUTATIVITY, p1, p2)]
    return BoundQuiver(name or f"{q.name}/comm", q.vertices, q.arrows, rel)


def parallel_pair_candidates(q: BoundQuiver) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """All unordered pairs of distinct nonzero parallel paths without common
    interior vertices; the candidate commutativity quotients."""
    if not is_finite_dimensional(q):
        raise QuiverError("parallel pair search needs a finite dimensional quiver")
    by_ends: dict[tuple[str, str], list[tuple[str, ...]]] = {}
    for p in nonzero_paths(q):
        if len(p) < 2:
            continue
        a0, a1 = q.arrow_by_name[p[0]], q.arrow_by_name[p[-1]]
        by_ends.setdefault((a0.src, a1.tgt), []).append(p)
    pairs = []
    for paths in by_ends.values():
        for i in range(len(paths)):
            for j in range(i + 1, len(paths)):
                p1, p2 = paths[i], paths[j]
                i1 = {q.arrow_by_name[x].tgt for x in p1[:-1]}
                i2 = {q.arrow_by_name[x].tgt for x in p2[:-1]}
                if not i1 & i2:
                    pairs.append((p1, p2))
    return pairs


def monomialize(q: BoundQuiver) -> BoundQuiver:
    """Replace each commutativity relation by its two monomial paths.

    For a special biserial algebra a commutativity relation forces a
    projective-injective module whose socle generates an ideal that does not
    change the representation type; killing it turns both parallel paths into
    zero relations.  Used to normalise quotients before representation-type
    questions.
    """
    if all(r.kind == MONOMIAL for r in q.relations):
        return q
    rel: list[Relation] = []
    for r in q.relations:
        if r.kind == MONOMIAL:
            rel.append(r)
        else:
            rel.append(Relation(MONOMIAL, r.path1))
            rel.append(Relation(MONOMIAL, r.path2))
    return BoundQuiver(f"{q.name}.mono", q.vertices, q.arrows, rel)
