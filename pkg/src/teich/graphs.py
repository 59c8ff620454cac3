"""Stable graphs, rigidifications, groupoid moves and trivalent enumeration.

A stable graph (V, E, T) is stored with oriented edges: the `ends` pair of an
edge is read as (initial vertex, terminal vertex), which doubles as the
persisted orientation (loops get ends (v, v); their two oriented versions are
still distinct half-edges).  Oriented edges are pairs (edge_id, +1|-1) and a
tail is referenced by its id.  The terminal vertex of (e, +1) is ends[1], of
(e, -1) is ends[0].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    pass


class NotComposable(GraphError):
    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


OrientedEdge = tuple[str, int]          # (edge id, +1 or -1)
Branch = tuple[str, ...]                # ("edge", id, sign) or ("tail", id)


def edge_branch(e: str, sign: int) -> Branch:
    return ("edge", e, sign)


def tail_branch(t: str) -> Branch:
    return ("tail", t)


def neg_branch(b: Branch) -> Branch:
    if b[0] != "edge":
        raise GraphError("tails have no opposite branch")
    return ("edge", b[1], -b[2])


@dataclass(frozen=True)
class StableGraph:
    vertices: frozenset
    edges: Mapping[str, tuple]      # id -> (init vertex, term vertex)
    tails: Mapping[str, str]        # id -> boundary vertex
    numbering: Mapping[str, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", dict(self.edges))
        object.__setattr__(self, "tails", dict(self.tails))
        if self.numbering is not None:
            object.__setattr__(self, "numbering", dict(self.numbering))

    # -- incidence ----------------------------------------------------

    def terminal(self, h: OrientedEdge) -> str:
        e, s = h
        ends = self.edges[e]
        return ends[1] if s > 0 else ends[0]

    def branch_vertex(self, b: Branch) -> str:
        if b[0] == "tail":
            return self.tails[b[1]]
        return self.terminal((b[1], b[2]))

    def branches_at(self, v) -> list:
        """Branches terminating at v: oriented edges with v_h = v, plus tails."""
        out = []
        for t in sorted(self.tails):
            if self.tails[t] == v:
                out.append(tail_branch(t))
        for e in sorted(self.edges):
            a, b = self.edges[e]
            if a == v:
                out.append(edge_branch(e, -1))
            if b == v:
                out.append(edge_branch(e, +1))
        return out

    def degree(self, v) -> int:
        d = sum(1 for t in self.tails.values() if t == v)
        for a, b in self.edges.values():
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def loops(self) -> list:
        return sorted(e for e, (a, b) in self.edges.items() if a == b)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges.values():
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        roots = {find(v) for v in self.vertices}
        return len(roots) == 1

    def genus(self) -> int:
        if not self.is_connected():
            raise GraphError("genus is only defined for connected graphs")
        return len(self.edges) - len(self.vertices) + 1

    def num_tails(self) -> int:
        return len(self.tails)

    def graph_type(self) -> tuple:
        return (self.genus(), len(self.tails))

    def is_trivalent(self) -> bool:
        return all(self.degree(v) == 3 for v in self.vertices)

    def to_json(self) -> dict:
        out = {
            "vertices": sorted(self.vertices),
            "edges": [
                {"id": e, "ends": [a] if a == b else [a, b]}
                for e, (a, b) in sorted(self.edges.items())
            ],
            "tails": [
                {"id": t, "end": v, **({"num": self.numbering[t]} if self.numbering else {})}
                for t, v in sorted(self.tails.items())
            ],
            "orientation": {e: [a, b] for e, (a, b) in sorted(self.edges.items())},
        }
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "StableGraph":
        vertices = frozenset(data["vertices"])
        edges = {}
        for rec in data.get("edges", []):
            ends = rec["ends"]
            if len(ends) == 1:
                ends = [ends[0], ends[0]]
            edges[rec["id"]] = tuple(ends)
        orientation = data.get("orientation") or {}
        for e, (a, b) in orientation.items():
            if e in edges and set(edges[e]) == {a, b}:
                edges[e] = (a, b)
        tails = {}
        numbering = {}
        for rec in data.get("tails", []):
            tails[rec["id"]] = rec["end"]
            if "num" in rec:
                numbering[rec["id"]] = rec["num"]
        return cls(vertices, edges, tails, numbering or None)


# -- validation --------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    structural_errors: list = field(default_factory=list)
    stability_violations: list = field(default_factory=list)

    def all_messages(self) -> list:
        return self.structural_errors + self.stability_violations


def validate(graph: StableGraph) -> ValidationReport:
    structural = []
    stability = []
    for e, ends in graph.edges.items():
        for v in ends:
            if v not in graph.vertices:
                structural.append("edge %s references missing vertex %s" % (e, v))
    for t, v in graph.tails.items():
        if v not in graph.vertices:
            structural.append("tail %s references missing vertex %s" % (t, v))
    if set(graph.edges) & set(graph.tails):
        structural.append("edge and tail ids overlap: %r" % (set(graph.edges) & set(graph.tails),))
    if graph.numbering is not None:
        if set(graph.numbering) != set(graph.tails):
            structural.append("numbering does not cover exactly the tails")
        else:
            nums = sorted(graph.numbering.values())
            if nums != list(range(1, len(graph.tails) + 1)):
                structural.append("numbering is not a bijection onto 1..%d" % len(graph.tails))
    if not graph.vertices:
        structural.append("graph has no vertices")
    elif not structural and not graph.is_connected():
        structural.append("graph is not connected")
    if structural:
        return ValidationReport(False, structural, [])
    for v in sorted(graph.vertices):
        d = graph.degree(v)
        if d < 3:
            stability.append("vertex %s has degree %d < 3" % (v, d))
    return ValidationReport(not stability, [], stability)


def genus(graph: StableGraph) -> int:
    return graph.genus()


def is_trivalent(graph: StableGraph) -> bool:
    return graph.is_trivalent()


def type_of(graph: StableGraph) -> tuple:
    return graph.graph_type()


def loops_of(graph: StableGraph) -> list:
    return graph.loops()


# -- extension ---------------------------------------------------------


def extend(graph: StableGraph) -> StableGraph:
    """Replace every tail by an edge to a fresh one-loop vertex (tail-free result)."""
    vertices = set(graph.vertices)
    edges = dict(graph.edges)
    for t in sorted(graph.tails):
        v = graph.tails[t]
        w = "v@%s" % t
        while w in vertices:
            w += "'"
        vertices.add(w)
        edges["e@%s" % t] = (v, w)
        edges["l@%s" % t] = (w, w)
    return StableGraph(frozenset(vertices), edges, {}, None)


# -- rigidification ----------------------------------------------------


@dataclass(frozen=True)
class Rigidification:
    """Per-vertex injection of {0, 1, oo} into incident branches."""
    assignment: Mapping[str, tuple]   # vertex -> (branch for 0, for 1, for oo)

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(self.assignment))

    def image(self) -> set:
        out = set()
        for triple in self.assignment.values():
            out.update(triple)
        return out

    def infinity_branches(self) -> set:
        return {triple[2] for triple in self.assignment.values()}


class RigidificationError(GraphError):
    pass


def check_rigidification(graph: StableGraph, rig: Rigidification) -> None:
    assigned = {}
    if set(rig.assignment) != set(graph.vertices):
        raise RigidificationError("rigidification must assign every vertex")
    for v, triple in rig.assignment.items():
        if len(set(triple)) != 3:
            raise RigidificationError("tau_%s is not injective" % v)
        for b in triple:
            if graph.branch_vertex(b) != v:
                raise RigidificationError("branch %r is not incident at %s" % (b, v))
        assigned[v] = triple
    for a in range(3):
        seen = {}
        for v, triple in assigned.items():
            b = triple[a]
            if b[0] == "edge":
                nb = neg_branch(b)
                if nb in seen and seen[nb] != v:
                    raise RigidificationError(
                        "tau_%s(%s) = -tau_%s(%s) on edge %s" % (v, a, seen[nb], a, b[1])
                    )
                seen[b] = v
    return None


def find_rigidification(graph: StableGraph) -> Rigidification:
    """Deterministic backtracking over branches sorted by (vertex, branch)."""
    report = validate(graph)
    if not report.ok:
        raise GraphError("cannot rigidify an invalid graph: %s" % "; ".join(report.all_messages()))
    verts = sorted(graph.vertices)
    branches = {v: graph.branches_at(v) for v in verts}
    assignment: dict = {}
    used_by_slot: list = [dict(), dict(), dict()]   # slot -> {branch: vertex}

    def ok(v, slot, b):
        if b[0] == "edge":
            nb = neg_branch(b)
            owner = used_by_slot[slot].get(nb)
            if owner is not None and owner != v:
                return False
        return True

    def search(i):
        if i == len(verts):
            return True
        v = verts[i]
        for triple in itertools.permutations(branches[v], 3):
            if all(ok(v, slot, b) for slot, b in enumerate(triple)):
                assignment[v] = triple
                for slot, b in enumerate(triple):
                    used_by_slot[slot][b] = v
                if search(i + 1):
                    return True
                for slot, b in enumerate(triple):
                    del used_by_slot[slot][b]
                del assignment[v]
        return False

    if not search(0):
        raise RigidificationError(
            "exhaustive backtracking found no rigidification; "
            "this must not happen for a stable graph"
        )
    rig = Rigidification(dict(assignment))
    check_rigidification(graph, rig)
    return rig


def coordinate_system(graph: StableGraph, rig: Rigidification) -> tuple:
    """(alpha-variable branches indexed by E_tau, q-variable edge ids)."""
    check_rigidification(graph, rig)
    all_branches = set()
    for v in graph.vertices:
        all_branches.update(graph.branches_at(v))
    e_tau = sorted(all_branches - rig.image())
    return (e_tau, sorted(graph.edges))


# -- fusing move -------------------------------------------------------


@dataclass(frozen=True)
class FusingResult:
    graph: StableGraph
    new_edge: str
    pairing: tuple                 # ((branches at one side), (branches at other side))
    contraction: StableGraph       # the 4-valent graph with the edge shrunk


def fusing_rewrite(graph: StableGraph, e: str) -> list:
    """The two alternative re-expansions of contracting a non-loop edge e."""
    if e not in graph.edges:
        raise GraphError("no edge %r" % e)
    u, v = graph.edges[e]
    if u == v:
        raise GraphError("edge %s is a loop; that degeneration is the simple-move regime" % e)
    if graph.degree(u) != 3 or graph.degree(v) != 3:
        raise GraphError("both endpoints of %s must be trivalent" % e)
    at_u = [b for b in graph.branches_at(u) if b != edge_branch(e, -1)]
    at_v = [b for b in graph.branches_at(v) if b != edge_branch(e, +1)]
    if len(at_u) != 2 or len(at_v) != 2:
        raise GraphError("endpoint branch bookkeeping failed for edge %s" % e)
    a, b = at_u
    c, d = at_v

    contraction = _contract_edge(graph, e)

    def rebuild(side_u, side_v):
        # side_u / side_v: branches moved to the two endpoints of the new edge e
        loc = {}
        for br in side_u:
            loc[br] = u
        for br in side_v:
            loc[br] = v
        edges = {}
        for f, (x, y) in graph.edges.items():
            if f == e:
                continue
            # half-edge (f,-1) lives at x, (f,+1) lives at y
            nx = loc.get(edge_branch(f, -1), x if x not in (u, v) else None)
            ny = loc.get(edge_branch(f, +1), y if y not in (u, v) else None)
            if nx is None or ny is None:
                raise GraphError("unassigned half-edge while rewriting %s" % f)
            edges[f] = (nx, ny)
        edges[e] = (u, v)
        tails = {}
        for t, x in graph.tails.items():
            br = tail_branch(t)
            tails[t] = loc.get(br, x if x not in (u, v) else None)
            if tails[t] is None:
                raise GraphError("unassigned tail while rewriting %s" % t)
        g = StableGraph(graph.vertices, edges, tails, graph.numbering)
        return g

    results = [
        FusingResult(rebuild((a, c), (b, d)), e, ((a, c), (b, d)), contraction),
        FusingResult(rebuild((a, d), (b, c)), e, ((a, d), (b, c)), contraction),
    ]
    return results


def _contract_edge(graph: StableGraph, e: str) -> StableGraph:
    u, v = graph.edges[e]
    edges = {}
    for f, (x, y) in graph.edges.items():
        if f == e:
            continue
        edges[f] = (u if x == v else x, u if y == v else y)
    tails = {t: (u if x == v else x) for t, x in graph.tails.items()}
    return StableGraph(graph.vertices - {v}, edges, tails, graph.numbering)


# -- groupoid words ----------------------------------------------------


@dataclass(frozen=True)
class HalfDehn:
    edge: str
    graph: StableGraph

    @property
    def source(self) -> StableGraph:
        return self.graph

    @property
    def target(self) -> StableGraph:
        return self.graph

    def check(self):
        if self.edge not in self.graph.edges:
            raise GraphError("half-Dehn twist on missing edge %r" % self.edge)


@dataclass(frozen=True)
class Fusing:
    edge: str
    new_edge: str
    source: StableGraph
    target: StableGraph

    def check(self):
        if self.edge not in self.source.edges:
            raise GraphError("fusing move on missing edge %r" % self.edge)
        if self.new_edge not in self.target.edges:
            raise GraphError("fusing move target misses edge %r" % self.new_edge)
        for res in fusing_rewrite(self.source, self.edge):
            if res.graph == self.target and res.new_edge == self.new_edge:
                return
        raise GraphError("target is not a fusing rewrite of the source at %r" % self.edge)


@dataclass(frozen=True)
class Simple:
    loop: str
    graph: StableGraph

    @property
    def source(self) -> StableGraph:
        return self.graph

    @property
    def target(self) -> StableGraph:
        return self.graph

    def check(self):
        if self.loop not in self.graph.edges:
            raise GraphError("simple move on missing edge %r" % self.loop)
        a, b = self.graph.edges[self.loop]
        if a != b:
            raise GraphError("simple move requires a loop edge, %r is not one" % self.loop)


def make_fusing(graph: StableGraph, e: str, choice: int) -> Fusing:
    """Fusing move for re-expansion branch `choice` (0 or 1)."""
    results = fusing_rewrite(graph, e)
    res = results[choice]
    return Fusing(e, res.new_edge, graph, res.graph)


@dataclass(frozen=True)
class GroupoidWord:
    moves: tuple
    source: StableGraph
    target: StableGraph

    def __len__(self):
        return len(self.moves)


def compose_word(moves: Sequence, basepoint: StableGraph | None = None) -> GroupoidWord:
    """Verify endpoint graphs match move-by-move; reject at the first bad index."""
    moves = tuple(moves)
    if not moves:
        if basepoint is None:
            raise GraphError("empty word needs an explicit basepoint graph")
        return GroupoidWord((), basepoint, basepoint)
    current = basepoint if basepoint is not None else moves[0].source
    for i, mv in enumerate(moves):
        if mv.source != current:
            raise NotComposable("move %d source does not match previous endpoint" % i, i)
        try:
            mv.check()
        except GraphError as exc:
            raise NotComposable("move %d invalid: %s" % (i, exc), i) from exc
        current = mv.target
    return GroupoidWord(moves, moves[0].source if basepoint is None else basepoint, current)


# -- isomorphism and canonical form -------------------------------------

_PERM_CAP = 2_000_000


def _vertex_invariant(graph: StableGraph, v) -> tuple:
    nloops = sum(1 for a, b in graph.edges.values() if a == b == v)
    nums = tuple(sorted(graph.numbering[t] for t, x in graph.tails.items() if x == v)) \
        if graph.numbering else tuple()
    ntails = sum(1 for x in graph.tails.values() if x == v)
    return (graph.degree(v), nloops, ntails, nums)


def canonical_form(graph: StableGraph) -> tuple:
    """Lexicographically minimal encoding over vertex relabelings.

    Tails are distinguishable through their numbering; edge orientation and all
    ids are forgotten.  Permutations only range over classes of equal vertex
    invariant, which keeps the search far below |V|!.
    """
    verts = sorted(graph.vertices)
    classes: dict = {}
    for v in verts:
        classes.setdefault(_vertex_invariant(graph, v), []).append(v)
    keys = sorted(classes)
    sizes = [len(classes[k]) for k in keys]
    total = 1
    for s in sizes:
        total *= _factorial(s)
        if total > _PERM_CAP:
            raise GraphError("canonical form search space too large (%d permutations)" % total)
    # each invariant class occupies a contiguous index block
    blocks = []
    pos = 0
    for k in keys:
        blocks.append((classes[k], pos))
        pos += len(classes[k])

    best = None
    for perms in itertools.product(*[itertools.permutations(cls) for cls, _ in blocks]):
        label = {}
        for (cls, start), perm in zip(blocks, perms):
            for i, v in enumerate(perm):
                label[v] = start + i
        enc_edges = tuple(sorted(
            (min(label[a], label[b]), max(label[a], label[b])) for a, b in graph.edges.values()
        ))
        if graph.numbering:
            enc_tails = tuple(sorted((graph.numbering[t], label[v]) for t, v in graph.tails.items()))
        else:
            enc_tails = tuple(sorted(label[v] for v in graph.tails.values()))
        enc = (len(verts), enc_edges, enc_tails)
        if best is None or enc < best:
            best = enc
    return best


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def is_isomorphic(g1: StableGraph, g2: StableGraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


# -- enumeration of trivalent graphs ------------------------------------


class BoundExceeded(GraphError):
    pass


@dataclass(frozen=True)
class EnumeratedGraph:
    graph: StableGraph
    certificate: tuple


def enumerate_trivalent(g: int, n: int, bound: int = 6) -> list:
    """All trivalent graphs of type (g, n) up to isomorphism (tails numbered)."""
    if g < 0 or n < 0:
        raise GraphError("type parameters must be nonnegative")
    size = 2 * g - 2 + n
    if size < 1:
        raise GraphError("no stable graphs of type (%d, %d)" % (g, n))
    if size > bound:
        raise BoundExceeded("2g-2+n = %d exceeds the configured bound %d" % (size, bound))
    nv = size
    ne = 3 * g - 3 + n

    out = []
    seen_structures = set()
    for tails_cnt, loops, adj in _trivalent_structures(nv, n):
        key = _structure_canon(nv, tails_cnt, loops, adj)
        if key in seen_structures:
            continue
        seen_structures.add(key)
        aut = _structure_automorphisms(nv, tails_cnt, loops, adj)
        for assign in _tail_assignments(nv, n, tails_cnt, aut):
            graph = _build_graph(nv, loops, adj, assign)
            if graph.genus() != g:
                continue
            cert = canonical_form(graph)
            out.append(EnumeratedGraph(graph, cert))
    out.sort(key=lambda eg: eg.certificate)
    # paranoia: duplicate-free modulo isomorphism
    certs = [eg.certificate for eg in out]
    assert len(set(certs)) == len(certs)
    assert all(eg.graph.graph_type() == (g, n) for eg in out)
    return out


def _trivalent_structures(nv: int, n: int):
    """Unlabeled candidates: tail counts, loop flags, adjacency multiplicities."""
    for tails_cnt in _compositions(n, nv, 3):
        for loops in itertools.product((0, 1), repeat=nv):
            # one labeled representative per (tails, loops) pattern is enough
            pattern = list(zip(tails_cnt, loops))
            if pattern != sorted(pattern):
                continue
            rows = [3 - tails_cnt[i] - 2 * loops[i] for i in range(nv)]
            if any(r < 0 for r in rows):
                continue
            if sum(rows) % 2:
                continue
            for adj in _symmetric_matrices(rows):
                if _connected(nv, loops, adj):
                    yield tails_cnt, loops, adj


def _compositions(n: int, parts: int, cap: int):
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(min(n, cap) + 1):
        for rest in _compositions(n - first, parts - 1, cap):
            yield (first,) + rest


def _symmetric_matrices(rows):
    """Symmetric nonnegative integer matrices with zero diagonal and given row sums."""
    nv = len(rows)
    a = [[0] * nv for _ in range(nv)]
    rem = list(rows)

    def fill(i, j):
        if i == nv:
            yield tuple(tuple(r) for r in a)
            return
        if j == nv:
            if rem[i] == 0:
                yield from fill(i + 1, i + 2)
            return
        for m in range(min(rem[i], rem[j]) + 1):
            a[i][j] = a[j][i] = m
            rem[i] -= m
            rem[j] -= m
            yield from fill(i, j + 1)
            rem[i] += m
            rem[j] += m
            a[i][j] = a[j][i] = 0

    yield from fill(0, 1)


def _connected(nv, loops, adj) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(nv):
            if adj[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == nv


def _structure_invariants(nv, tails_cnt, loops, adj):
    # permutation-covariant per-vertex data: restricts relabeling searches
    return [(tails_cnt[i], loops[i], tuple(sorted(adj[i]))) for i in range(nv)]


def _class_relabelings(inv):
    """Permutations perm (new position -> old index) with invariant classes in
    sorted contiguous blocks; only within-class orderings vary."""
    order = sorted(range(len(inv)), key=lambda i: (inv[i], i))
    blocks = []
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and inv[order[j]] == inv[order[i]]:
            j += 1
        blocks.append(order[i:j])
        i = j
    for prod in itertools.product(*[itertools.permutations(b) for b in blocks]):
        perm = []
        for p in prod:
            perm.extend(p)
        yield tuple(perm)


def _structure_canon(nv, tails_cnt, loops, adj):
    inv = _structure_invariants(nv, tails_cnt, loops, adj)
    best = None
    for perm in _class_relabelings(inv):
        t = tuple(tails_cnt[perm[i]] for i in range(nv))
        l = tuple(loops[perm[i]] for i in range(nv))
        m = tuple(tuple(adj[perm[i]][perm[j]] for j in range(nv)) for i in range(nv))
        enc = (t, l, m)
        if best is None or enc < best:
            best = enc
    return best


def _structure_automorphisms(nv, tails_cnt, loops, adj):
    inv = _structure_invariants(nv, tails_cnt, loops, adj)
    classes: dict = {}
    for i in range(nv):
        classes.setdefault(inv[i], []).append(i)
    items = list(classes.values())
    auts = []
    for prod in itertools.product(*[itertools.permutations(c) for c in items]):
        perm = [0] * nv
        for cls, p in zip(items, prod):
            for src, dst in zip(cls, p):
                perm[src] = dst
        if all(adj[perm[i]][perm[j]] == adj[i][j]
               for i in range(nv) for j in range(i + 1, nv)):
            auts.append(tuple(perm))
    return auts


def _tail_assignments(nv, n, tails_cnt, aut):
    """Assignments of {1..n} to vertices with given counts, up to the automorphisms."""
    labels = list(range(1, n + 1))
    seen = set()
    for assign in _distribute(labels, tails_cnt):
        canon = min(
            tuple(tuple(sorted(assign[perm[i]])) for i in range(nv))
            for perm in aut
        )
        if canon in seen:
            continue
        seen.add(canon)
        yield assign


def _distribute(labels, counts):
    if not counts:
        if not labels:
            yield ()
        return
    c = counts[0]
    for chosen in itertools.combinations(labels, c):
        rest = [x for x in labels if x not in chosen]
        for tail in _distribute(rest, counts[1:]):
            yield (tuple(sorted(chosen)),) + tail


def _build_graph(nv, loops, adj, assign) -> StableGraph:
    vertices = frozenset("v%d" % i for i in range(nv))
    edges = {}
    k = 0
    for i in range(nv):
        if loops[i]:
            edges["e%d" % k] = ("v%d" % i, "v%d" % i)
            k += 1
    for i in range(nv):
        for j in range(i + 1, nv):
            for _ in range(adj[i][j]):
                edges["e%d" % k] = ("v%d" % i, "v%d" % j)
                k += 1
    tails = {}
    numbering = {}
    for i in range(nv):
        for num in assign[i]:
            t = "t%d" % num
            tails[t] = "v%d" % i
            numbering[t] = num
    return StableGraph(vertices, edges, tails, numbering or None)
