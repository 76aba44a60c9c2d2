"""Multipartite entangled-state configurations modelled as hypergraphs.

Agents are integer labels.  A hyperedge of size 2 is an EPR pair shared by
its two members; a hyperedge of size k >= 3 is a k-CAT (GHZ-class) state
shared by its k members.  An EPR graph is simply the 2-uniform case.  The
edge multiset may contain repeats: k copies of the same shared state are k
equal hyperedges.

Everything here is an immutable value; all operations are pure functions.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .errors import EmptyStructure, ParseError

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph over a fixed, ordered agent set.

    Canonical form is enforced on construction: agents sorted ascending,
    every hyperedge sorted ascending, the edge multiset sorted
    lexicographically.  Two values compare equal iff they describe the same
    configuration, which makes the type directly usable as a search-space
    key.

    Agents that appear in no hyperedge are allowed (they arise mid
    protocol) and are reported by :func:`structure_report`.
    """

    agents: tuple[int, ...]
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        agents = tuple(sorted(self.agents))
        if not agents:
            raise ValueError("agent set must be nonempty")
        if len(set(agents)) != len(agents):
            raise ValueError("agent labels must be unique")
        known = set(agents)
        canon = []
        for edge in self.edges:
            e = tuple(sorted(edge))
            if len(e) < 2:
                raise ValueError(f"hyperedge {e} has fewer than two members")
            if len(set(e)) != len(e):
                raise ValueError(f"hyperedge {tuple(edge)} repeats a member")
            if not known.issuperset(e):
                raise ValueError(f"hyperedge {e} uses agents outside {agents}")
            canon.append(e)
        object.__setattr__(self, "agents", agents)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def size_total(self) -> int:
        """Sum of hyperedge sizes; strictly decreases under every LOCC move."""
        return sum(len(e) for e in self.edges)

    def multiplicity(self, edge) -> int:
        e = tuple(sorted(edge))
        return sum(1 for x in self.edges if x == e)

    def degree(self, agent: int) -> int:
        """Number of hyperedge instances containing the agent."""
        return sum(1 for e in self.edges if agent in e)

    def replace(self, remove=(), add=()) -> "Hypergraph":
        """New hypergraph with one instance of each `remove` edge swapped
        for the `add` edges.  Raises ValueError if an instance is absent."""
        pool = list(self.edges)
        for edge in remove:
            pool.remove(tuple(sorted(edge)))
        pool.extend(tuple(sorted(edge)) for edge in add)
        return Hypergraph(self.agents, tuple(pool))


# ---------------------------------------------------------------------------
# convenience constructors
# ---------------------------------------------------------------------------

def cat_state(n: int) -> Hypergraph:
    """The n-CAT: one hyperedge over agents 1..n (the 2-CAT is an EPR pair)."""
    if n < 2:
        raise ValueError("a CAT state needs at least two agents")
    return Hypergraph(tuple(range(1, n + 1)), (tuple(range(1, n + 1)),))


def epr_pair(n: int, a: int, b: int) -> Hypergraph:
    """A single EPR pair {a, b} in a network of agents 1..n."""
    return Hypergraph(tuple(range(1, n + 1)), ((a, b),))


def path_tree(n: int) -> Hypergraph:
    """The chain EPR graph 1-2-...-n."""
    return Hypergraph(tuple(range(1, n + 1)),
                      tuple((i, i + 1) for i in range(1, n)))


def star_tree(n: int, center: int = 1) -> Hypergraph:
    """The star EPR graph with every other agent attached to `center`."""
    return Hypergraph(tuple(range(1, n + 1)),
                      tuple((center, i) for i in range(1, n + 1) if i != center))


def copies(h: Hypergraph, k: int) -> Hypergraph:
    """k copies of every shared state of h (k >= 1)."""
    if k < 1:
        raise ValueError("need at least one copy")
    return Hypergraph(h.agents, h.edges * k)


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------

def _incidence(h: Hypergraph) -> dict[int, list[Edge]]:
    index: dict[int, list[Edge]] = {a: [] for a in h.agents}
    for e in h.edges:
        for a in e:
            index[a].append(e)
    return index


def is_connected(h: Hypergraph) -> bool:
    """True iff every pair of agents is linked by a hyperpath.

    Agents in no hyperedge make a multi-agent instance disconnected; a
    single agent with no edges is trivially connected.
    """
    if h.n == 1:
        return True
    index = _incidence(h)
    seen = {h.agents[0]}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for e in index[x]:
            for y in e:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return len(seen) == h.n


def is_spanning_epr_tree(h: Hypergraph) -> bool:
    """True iff h is 2-uniform, multiplicity-free, connected and acyclic."""
    if any(len(e) != 2 for e in h.edges):
        return False
    if len(set(h.edges)) != len(h.edges):
        return False
    return len(h.edges) == h.n - 1 and is_connected(h)


def is_entangled_hypertree(h: Hypergraph) -> bool:
    """True iff h is connected with no pair of agents joined by two
    distinct hyperpaths.

    Implemented via the incidence-graph criterion: the bipartite graph with
    agents on one side and hyperedge instances on the other (membership as
    edges) must be a tree.  Duplicate hyperedges always create a cycle
    there, so hypertrees are automatically multiplicity-free.
    """
    if not is_connected(h):
        return False
    nodes = h.n + len(h.edges)
    links = h.size_total
    return links == nodes - 1


def uniformity(h: Hypergraph) -> int | None:
    """The common hyperedge size r, or None if sizes are mixed."""
    if not h.edges:
        raise EmptyStructure("uniformity of an edgeless hypergraph is undefined")
    sizes = {len(e) for e in h.edges}
    if len(sizes) == 1:
        return sizes.pop()
    return None


def pendant_vertices(h: Hypergraph) -> frozenset[int]:
    """Agents belonging to exactly one hyperedge instance.

    Agents in zero hyperedges are excluded here; structure_report lists
    them separately.
    """
    counts = Counter(a for e in h.edges for a in e)
    return frozenset(a for a, c in counts.items() if c == 1)


def isolated_agents(h: Hypergraph) -> frozenset[int]:
    covered = {a for e in h.edges for a in e}
    return frozenset(set(h.agents) - covered)


@dataclass(frozen=True)
class StructureReport:
    connected: bool
    is_hypertree: bool
    uniform_r: int | None
    pendant_vertices: frozenset[int]
    isolated_agents: frozenset[int]
    edge_count: int


def structure_report(h: Hypergraph) -> StructureReport:
    """Aggregate of the structural predicates for one configuration."""
    uniform_r = uniformity(h) if h.edges else None
    hypertree = is_entangled_hypertree(h)
    if hypertree and uniform_r is not None:
        # edge-count law for uniform hypertrees
        assert len(h.edges) * (uniform_r - 1) + 1 == h.n
    return StructureReport(
        connected=is_connected(h),
        is_hypertree=hypertree,
        uniform_r=uniform_r,
        pendant_vertices=pendant_vertices(h),
        isolated_agents=isolated_agents(h),
        edge_count=len(h.edges),
    )


# ---------------------------------------------------------------------------
# canonical text format
# ---------------------------------------------------------------------------
#
# One header line `agents: n`, one line `cat: i1 i2 ... ik` per hyperedge
# instance (duplicates encode multiplicity), agents numbered 1..n.  Parsing
# is order-insensitive; emission is canonical.

def parse_hypergraph(text: str) -> Hypergraph:
    n: int | None = None
    raw_edges: list[tuple[int, ...]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("agents:"):
            if n is not None:
                raise ParseError("duplicate 'agents:' header", lineno)
            body = stripped[len("agents:"):].strip()
            try:
                n = int(body)
            except ValueError:
                raise ParseError(f"bad agent count {body!r}", lineno) from None
            if n < 1:
                raise ParseError("agent count must be >= 1", lineno)
        elif stripped.startswith("cat:"):
            body = stripped[len("cat:"):].split()
            try:
                members = tuple(int(tok) for tok in body)
            except ValueError:
                raise ParseError("hyperedge members must be integers", lineno) from None
            if len(members) < 2:
                raise ParseError("a hyperedge needs at least two members", lineno)
            if len(set(members)) != len(members):
                raise ParseError("hyperedge repeats a member", lineno)
            raw_edges.append((lineno, members))
        else:
            raise ParseError(f"unrecognized line {stripped!r}", lineno)
    if n is None:
        raise ParseError("missing 'agents: n' header")
    agents = tuple(range(1, n + 1))
    for lineno, members in raw_edges:
        if any(m < 1 or m > n for m in members):
            raise ParseError(f"member outside 1..{n}", lineno)
    return Hypergraph(agents, tuple(members for _, members in raw_edges))


def format_hypergraph(h: Hypergraph) -> str:
    """Canonical emission: members ascending, hyperedges lexicographic."""
    if h.agents != tuple(range(1, h.n + 1)):
        raise ValueError("canonical text format requires agents numbered 1..n")
    lines = [f"agents: {h.n}"]
    lines.extend("cat: " + " ".join(str(m) for m in e) for e in h.edges)
    return "\n".join(lines) + "\n"
