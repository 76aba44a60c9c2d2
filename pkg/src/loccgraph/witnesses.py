"""Constructive blocking-witness generators.

Each function here builds the impossibility side of a known incomparability
result directly from the structure of its inputs, instead of scanning all
colorings.  Every emitted coloring is validated by recomputing both cuts
(BlockingWitness construction refuses anything that is not a witness), and
the test suite additionally cross-checks each constructive witness against
the exhaustive scan in :mod:`loccgraph.merging`.

Nondeterministic choices ("take any vertex") always resolve to the lowest
agent or lexicographically least hyperedge, so emitted proofs are
reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    ConditionNotMet,
    EqualHypertrees,
    EqualTrees,
    InputConnected,
    MismatchedAgents,
    NotRUniformHypertrees,
    NotSpanningTree,
    RTooSmall,
    TooFewEdges,
)
from .hypergraph import (
    Edge,
    Hypergraph,
    cat_state,
    copies,
    epr_pair,
    is_entangled_hypertree,
    is_spanning_epr_tree,
    pendant_vertices,
    path_tree,
    uniformity,
)
from .merging import Bicoloring, BlockingWitness, find_blocking_witness, make_witness
from .protocols import Discard, ProtocolTrace, cat_to_epr, make_trace, tree_to_cat


# ---------------------------------------------------------------------------
# small structural helpers (inputs are connected hypergraphs or hypertrees,
# so edge values are unique and value identity is safe)
# ---------------------------------------------------------------------------

def _incident(h: Hypergraph) -> dict[int, list[Edge]]:
    index: dict[int, list[Edge]] = {a: [] for a in h.agents}
    for e in h.edges:
        for a in e:
            index[a].append(e)
    return index


def _connected_components(h: Hypergraph) -> list[frozenset[int]]:
    index = _incident(h)
    seen: set[int] = set()
    comps = []
    for start in h.agents:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for e in index[x]:
                for y in e:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def _component_without(h: Hypergraph, start: int, banned: Edge) -> frozenset[int]:
    """Agents reachable from `start` without traversing the edge `banned`."""
    index = _incident(h)
    comp = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for e in index[x]:
            if e == banned:
                continue
            for y in e:
                if y not in comp:
                    comp.add(y)
                    queue.append(y)
    return frozenset(comp)


def _hyperpath(h: Hypergraph, a: int, b: int) -> tuple[list[Edge], list[int]]:
    """The unique shortest hyperpath a -> b: its edges and the junction
    vertices between consecutive edges."""
    index = _incident(h)
    via: dict[int, tuple[int, Edge] | None] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            break
        for e in index[x]:
            for y in e:
                if y not in via:
                    via[y] = (x, e)
                    queue.append(y)
    if b not in via:
        raise ValueError(f"no hyperpath between {a} and {b}")
    edges: list[Edge] = []
    junctions: list[int] = []
    cur = b
    while via[cur] is not None:
        prev, e = via[cur]
        edges.append(e)
        cur = prev
        if via[cur] is not None:
            junctions.append(cur)
    edges.reverse()
    junctions.reverse()
    return edges, junctions


def _co_edge(h: Hypergraph, a: int, b: int) -> bool:
    return any(a in e and b in e for e in h.edges)


def _proper_two_coloring(t: Hypergraph) -> frozenset[int]:
    """A-side of the proper 2-coloring of a tree: the smaller depth-parity
    class (ties broken to the class not containing the lowest agent)."""
    index = _incident(t)
    root = t.agents[0]
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for e in index[x]:
            for y in e:
                if y not in depth:
                    depth[y] = depth[x] + 1
                    queue.append(y)
    even = frozenset(a for a, d in depth.items() if d % 2 == 0)
    odd = frozenset(a for a, d in depth.items() if d % 2 == 1)
    if len(odd) != len(even):
        return min(odd, even, key=len)
    return odd  # root is even


# ---------------------------------------------------------------------------
# disconnected graphs vs CAT states
# ---------------------------------------------------------------------------

def witness_disconnected_vs_cat(g: Hypergraph) -> BlockingWitness:
    """No disconnected EPR graph can be turned into the n-CAT.

    Coloring one connected component A and the rest B cuts none of g's
    edges but always cuts the CAT: cuts (0, 1).
    """
    comps = _connected_components(g)
    if len(comps) < 2:
        raise InputConnected("graph is connected; no component split exists")
    coloring = Bicoloring(g.agents, comps[0])
    return make_witness(g, cat_state(g.n), coloring, direction=("graph", "cat"))


def witness_cat_vs_disconnected(g: Hypergraph) -> tuple[BlockingWitness, BlockingWitness]:
    """CAT state and a disconnected EPR graph with >= 2 edges are
    incomparable; returns (cat -/-> g, g -/-> cat).

    The first direction colors one endpoint of each of two chosen edges A:
    two disjoint edges {i1,i2}, {j1,j2} give A = {i2, j2}; two edges
    sharing i2 give A = {i2}.  Either way g's cut is at least 2 while any
    CAT cut is 1.
    """
    if len(g.edges) < 2:
        raise TooFewEdges("need at least two EPR pairs")
    if len(_connected_components(g)) < 2:
        raise InputConnected("graph is connected")
    distinct = sorted(set(g.edges))
    if len(distinct) == 1:
        a_side = frozenset({distinct[0][1]})
    else:
        e1, e2 = distinct[0], distinct[1]
        shared = set(e1) & set(e2)
        if shared:
            a_side = frozenset(shared)
        else:
            a_side = frozenset({e1[1], e2[1]})
    cat = cat_state(g.n)
    forward = make_witness(cat, g, Bicoloring(g.agents, a_side),
                           direction=("cat", "graph"))
    return forward, witness_disconnected_vs_cat(g)


def witness_ghz_not_two_epr(target: Hypergraph | None = None) -> BlockingWitness:
    """A three-party GHZ state cannot be turned into two EPR pairs.

    `target` is any two distinct pairs among three agents (default: pairs
    {1,3} and {2,3}); the witness colors the agent common to both pairs A.
    Consequence: a GHZ state also cannot drive selective teleportation of
    two qubits to the other two parties, since success would manufacture
    exactly these two pairs.
    """
    if target is None:
        target = Hypergraph((1, 2, 3), ((1, 3), (2, 3)))
    if target.n != 3:
        raise MismatchedAgents("the two-EPR configuration lives on three agents")
    distinct = sorted(set(target.edges))
    if len(target.edges) != 2 or len(distinct) != 2 or any(len(e) != 2 for e in distinct):
        raise ValueError("target must consist of two distinct EPR pairs")
    common = set(distinct[0]) & set(distinct[1])
    coloring = Bicoloring(target.agents, frozenset(common))
    return make_witness(cat_state(3), target, coloring, direction=("ghz", "two-epr"))


# ---------------------------------------------------------------------------
# order chains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrictOrderLink:
    """lower < upper: a trace turning upper into lower, and a witness that
    lower can never be turned into upper."""

    lower: Hypergraph
    upper: Hypergraph
    downgrade: ProtocolTrace
    obstruction: BlockingWitness


@dataclass(frozen=True)
class OrderChain:
    pair_vs_cat: StrictOrderLink
    cat_vs_tree: StrictOrderLink
    pair_vs_tree: StrictOrderLink


def check_order_chain(n: int) -> OrderChain:
    """Verify 1 EPR pair < n-CAT < spanning tree for the canonical instances
    (pair {1,2}, chain tree), with evidence at every link."""
    if n < 3:
        raise ValueError("the chain is strict only from three agents on")
    pair = epr_pair(n, 1, 2)
    cat = cat_state(n)
    tree = path_tree(n)

    def link(lower, upper, downgrade):
        witness = find_blocking_witness(lower, upper)
        if witness is None:
            raise AssertionError("expected obstruction is missing")
        assert downgrade.start == upper and downgrade.end == lower
        return StrictOrderLink(lower, upper, downgrade, witness)

    cat_to_pair = cat_to_epr(n, 1, 2)
    tree_to_cat_trace = tree_to_cat(tree)
    tree_to_pair = make_trace(tree, [Discard(e) for e in tree.edges if e != (1, 2)])
    return OrderChain(
        pair_vs_cat=link(pair, cat, cat_to_pair),
        cat_vs_tree=link(cat, tree, tree_to_cat_trace),
        pair_vs_tree=link(pair, tree, tree_to_pair),
    )


def witness_cat_copies_vs_tree(n: int, t: Hypergraph) -> BlockingWitness:
    """n-2 copies of the n-CAT cannot produce a spanning tree.

    The proper 2-coloring of the tree cuts all n-1 tree edges but each CAT
    copy only once: cuts (n-2, n-1).
    """
    if not is_spanning_epr_tree(t):
        raise NotSpanningTree("target is not a spanning EPR tree")
    if t.n != n:
        raise MismatchedAgents(f"tree spans {t.n} agents, not {n}")
    if n < 3:
        raise ValueError("need at least three agents")
    source = copies(cat_state(n), n - 2)
    coloring = Bicoloring(t.agents, _proper_two_coloring(t))
    witness = make_witness(source, t, coloring, direction=("cat-copies", "tree"))
    assert (witness.source_cut, witness.target_cut) == (n - 2, n - 1)
    return witness


# ---------------------------------------------------------------------------
# distinct spanning trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeSplit:
    """Proof object for t1 -/-> t2: a pivot edge of t2 missing from t1, the
    t1 path between its endpoints, and the component coloring derived from
    cutting t1 at the first path edge."""

    pivot_edge: tuple[int, int]       # oriented (i, j)
    source_path: tuple[int, ...]      # i, k1, ..., km, j in t1
    colored_a: frozenset[int]         # component of i in t1 minus {i, k1}


def witness_distinct_spanning_trees(t1: Hypergraph, t2: Hypergraph,
                                    ) -> tuple[TreeSplit, BlockingWitness]:
    """Any two distinct spanning trees are LOCC-incomparable; this builds
    the t1 -/-> t2 direction (swap arguments for the reverse).

    Cutting t1 at the first edge of the i..j path leaves exactly one
    bichromatic t1 edge, while t2 keeps the pivot plus at least one more
    edge across the split: cuts (1, >= 2).
    """
    for t in (t1, t2):
        if not is_spanning_epr_tree(t):
            raise NotSpanningTree("both inputs must be spanning EPR trees")
    if t1.agents != t2.agents:
        raise MismatchedAgents("trees must span the same agents")
    extra = sorted(set(t2.edges) - set(t1.edges))
    if not extra:
        raise EqualTrees("the trees coincide")
    pivot = extra[0]

    side = {v: _component_without(t2, v, pivot) - {v} for v in pivot}
    assert not (side[pivot[0]] & side[pivot[1]])
    assert side[pivot[0]] | side[pivot[1]]

    def build(i: int, j: int):
        edges, junctions = _hyperpath(t1, i, j)
        path = (i, *junctions, j)
        colored_a = _component_without(t1, i, edges[0])
        return path, colored_a

    i, j = pivot
    path, colored_a = build(i, j)
    k1 = path[1]
    assert k1 in side[i] | side[j]
    if k1 not in side[i]:
        # anchor at the other endpoint so the second t2 crossing is forced
        i, j = j, i
        path, colored_a = build(i, j)

    coloring = Bicoloring(t1.agents, colored_a)
    witness = make_witness(t1, t2, coloring, direction=("t1", "t2"))
    assert witness.source_cut == 1
    return TreeSplit(pivot_edge=(i, j), source_path=path, colored_a=colored_a), witness


# ---------------------------------------------------------------------------
# pendant condition
# ---------------------------------------------------------------------------

def witness_pendant_condition(h1: Hypergraph, h2: Hypergraph,
                              ) -> tuple[BlockingWitness, BlockingWitness]:
    """Incomparability when each side owns a pendant vertex the other
    lacks; returns (h1 -/-> h2, h2 -/-> h1).

    Isolating such a vertex u reduces its pendant side to a single EPR pair
    while the other side keeps one pair per hyperedge at u: cuts
    (1, degree >= 2).  Hypertree structure is not required.
    """
    if h1.agents != h2.agents:
        raise MismatchedAgents("states must share one agent set")

    def one_direction(src, dst, direction):
        candidates = sorted(u for u in pendant_vertices(src) - pendant_vertices(dst)
                            if dst.degree(u) >= 2)
        if not candidates:
            raise ConditionNotMet(
                "no vertex is pendant on one side and multiply covered on the other")
        u = candidates[0]
        coloring = Bicoloring(src.agents, frozenset({u}))
        witness = make_witness(src, dst, coloring, direction=direction)
        assert witness.source_cut == 1
        return witness

    return (one_direction(h1, h2, ("h1", "h2")),
            one_direction(h2, h1, ("h2", "h1")))


# ---------------------------------------------------------------------------
# r-uniform hypertrees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparatingPair:
    """Vertices sharing a hyperedge in h2 but never sharing one in h1."""

    u: int
    v: int


def _require_r_uniform_hypertrees(h1: Hypergraph, h2: Hypergraph) -> int:
    if h1.agents != h2.agents:
        raise MismatchedAgents("hypertrees must share one agent set")
    for h in (h1, h2):
        if not is_entangled_hypertree(h):
            raise NotRUniformHypertrees("input is not an entangled hypertree")
    r1, r2 = uniformity(h1), uniformity(h2)
    if r1 is None or r2 is None or r1 != r2:
        raise NotRUniformHypertrees("inputs are not r-uniform for one common r")
    if set(h1.edges) == set(h2.edges):
        raise EqualHypertrees("the hypertrees coincide")
    return r1


def find_separating_pair(h1: Hypergraph, h2: Hypergraph) -> SeparatingPair:
    """A pair co-edged in h2 but separated in h1, for distinct r-uniform
    hypertrees with r >= 3.

    Construction: take the least h2 hyperedge E2 outside the common edge
    set, its least member w, and the least h1 hyperedge E1 containing w;
    then split on the overlap size of E1 and E2.  Every choice point breaks
    ties by canonical order, and the result is validated by a direct
    co-occurrence scan.
    """
    r = _require_r_uniform_hypertrees(h1, h2)
    if r < 3:
        raise RTooSmall("r = 2 is the spanning-tree case; use the tree split")
    common = set(h1.edges) & set(h2.edges)
    e2 = sorted(set(h2.edges) - common)[0]
    w = e2[0]
    e1 = sorted(e for e in set(h1.edges) if w in e)[0]
    overlap = sorted(set(e1) & set(e2))
    outside = sorted(set(e2) - set(e1))
    assert overlap and outside

    pair: tuple[int, int] | None = None
    if len(overlap) > 1:
        u1, u2 = overlap[0], overlap[1]
        for v in outside:
            if not _co_edge(h1, u1, v):
                pair = (u1, v)
                break
        if pair is None:
            # every outside vertex meets u1 somewhere in h1, so none of
            # them can also meet u2 without closing a cycle
            pair = (u2, outside[0])
    else:
        u1 = overlap[0]
        for v in outside:
            if not _co_edge(h1, u1, v):
                pair = (u1, v)
                break
        if pair is None:
            # all outside vertices hang off u1; they cannot all share one
            # h1 hyperedge (that edge would equal e2), so two of them sit
            # in different u1 edges and are themselves separated
            groups: dict[Edge, list[int]] = {}
            for v in outside:
                host = sorted(e for e in set(h1.edges) if u1 in e and v in e)[0]
                groups.setdefault(host, []).append(v)
            assert len(groups) >= 2
            va = outside[0]
            host_a = next(host for host, vs in groups.items() if va in vs)
            vb = min(v for host, vs in groups.items() if host != host_a for v in vs)
            pair = (va, vb)

    u, v = sorted(pair)
    assert _co_edge(h2, u, v) and not _co_edge(h1, u, v)
    return SeparatingPair(u, v)


@dataclass(frozen=True)
class HypertreeProof:
    """One-direction proof that h1 -/-> h2 for r-uniform hypertrees."""

    pair: SeparatingPair
    shared_edge: Edge                 # the h2 hyperedge holding the pair
    case_label: str
    path_edges: tuple[Edge, ...]      # the h1 hyperpath between the pair
    witness: BlockingWitness


def _hypertree_direction(h1: Hypergraph, h2: Hypergraph,
                         direction: tuple[str, str]) -> HypertreeProof:
    """Case analysis around the separating pair (u, v).

    All colorings cut h1 at exactly one hyperedge (one component of the
    cut edge against the rest), chosen so that the pair's h2 hyperedge is
    bichromatic and some second h2 edge must cross as well.
    """
    pair = find_separating_pair(h1, h2)
    u, v = pair.u, pair.v
    shared = next(e for e in h2.edges if u in e and v in e)
    path_edges, junctions = _hyperpath(h1, u, v)
    assert len(path_edges) >= 2
    r = len(shared)

    # how h2 falls apart around the shared edge
    comp2 = {x: _component_without(h2, x, shared) for x in shared}
    side_u2 = comp2[u] - {u}
    side_v2 = comp2[v] - {v}

    # how h1 falls apart around the path ends
    a_u = _component_without(h1, u, path_edges[0])
    a_v = _component_without(h1, v, path_edges[-1])
    middle = frozenset(h1.agents) - a_u - a_v

    path_set = set(path_edges)
    hangers = sorted(middle & (side_u2 | side_v2))
    if hangers:
        # CASE 1: some middle vertex w hangs off u or v in h2.  Cut h1 at
        # the last u-v path edge on the way to w; the anchor stays opposite
        # w, so the h2 path from w back to the anchor must cross once more
        # than the shared edge alone.
        w = hangers[0]
        anchor = u if w in side_u2 else v
        to_w, _ = _hyperpath(h1, anchor, w)
        x_edge = [e for e in to_w if e in path_set][-1]
        a_side = _component_without(h1, anchor, x_edge)
        label = "1." + _case1_sublabel(h1, anchor, w, x_edge, path_edges, junctions)
    else:
        # CASE 2: pigeonhole a vertex t of the first two path edges into the
        # part of h2 hanging off some third member w of the shared edge.
        w1 = junctions[0]
        w2 = junctions[1] if len(junctions) >= 2 else v
        c1 = set(path_edges[0]) - {u, w1}
        c2 = set(path_edges[1]) - {w1, w2}
        assert len(c1) == r - 2 and len(c2) == r - 2 and not (c1 & c2)
        assert len(c1 | c2) - (r - 2) == r - 2 >= 1
        candidates = sorted(x for x in c1 | c2 if x not in shared)
        assert candidates, "pigeonhole failed: every candidate sits inside the shared edge"
        t = candidates[0]
        w = next(x for x in shared if x not in (u, v) and t in comp2[x])
        host = path_edges[0] if t in c1 else path_edges[1]
        c_label = "2.1" if t in c1 else "2.2"
        t_comp = _component_without(h1, t, host)
        if w in host:
            # w shares t's host edge: isolate w's own branch
            b_side = _component_without(h1, w, host)
            a_side = frozenset(h1.agents) - b_side
        else:
            # cut h1 where the path from t finally reaches w; t keeps at
            # least one of u, v (and the shared edge keeps w) on the far side
            to_w, _ = _hyperpath(h1, t, w)
            a_side = _component_without(h1, t, to_w[-1])
        if w in a_u:
            label = c_label + ".1"
        elif w in a_v:
            label = c_label + ".2"
        elif w in t_comp and w != t:
            label = c_label + ".3.1"
        else:
            label = c_label + ".3.2"

    coloring = Bicoloring(h1.agents, a_side)
    witness = make_witness(h1, h2, coloring, direction=direction)
    assert witness.source_cut == 1
    return HypertreeProof(pair=pair, shared_edge=shared, case_label=label,
                          path_edges=tuple(path_edges), witness=witness)


def _case1_sublabel(h1, anchor, w, x_edge, path_edges, junctions) -> str:
    if w in x_edge:
        return "1"
    # the vertex through which the path to w leaves the cut edge
    to_w, to_w_junctions = _hyperpath(h1, anchor, w)
    pos = to_w.index(x_edge)
    exit_vertex = to_w_junctions[pos] if pos < len(to_w_junctions) else w
    return "2" if exit_vertex in junctions else "3"


def r_uniform_incomparability(h1: Hypergraph, h2: Hypergraph,
                              ) -> tuple[HypertreeProof, HypertreeProof]:
    """Both direction proofs for distinct r-uniform hypertrees, r >= 3."""
    return (_hypertree_direction(h1, h2, ("h1", "h2")),
            _hypertree_direction(h2, h1, ("h2", "h1")))


def witness_r_uniform_hypertrees(h1: Hypergraph, h2: Hypergraph,
                                 ) -> tuple[BlockingWitness, BlockingWitness]:
    """Any two distinct r-uniform entangled hypertrees are incomparable;
    returns (h1 -/-> h2, h2 -/-> h1).  r = 2 is the spanning-tree case and
    delegates to the tree split."""
    r = _require_r_uniform_hypertrees(h1, h2)
    if r == 2:
        _, fwd = witness_distinct_spanning_trees(h1, h2)
        _, bwd = witness_distinct_spanning_trees(h2, h1)
        return fwd, bwd
    fwd_proof, bwd_proof = r_uniform_incomparability(h1, h2)
    return fwd_proof.witness, bwd_proof.witness
