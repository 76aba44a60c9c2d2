"""Instance generators: labeled spanning trees via the Prufer bijection,
seeded r-uniform hypertrees, and the exhaustive coloring stream.
"""

from __future__ import annotations

import heapq
import itertools
import random
from collections import Counter
from typing import Iterator

from .errors import BoundExceeded, IncompatibleParameters, InvalidSequence, NotSpanningTree
from .hypergraph import Hypergraph, is_spanning_epr_tree
from .merging import DEFAULT_COLOR_BOUND, Bicoloring, iter_bicolorings

TREE_ENUM_MAX_N = 7  # n^(n-2) <= 16807


def prufer_decode(symbols, n: int) -> Hypergraph:
    """Decode a length n-2 sequence over 1..n into its labeled spanning tree."""
    symbols = tuple(symbols)
    if n < 2:
        raise InvalidSequence("need at least two agents")
    if len(symbols) != n - 2:
        raise InvalidSequence(f"sequence length {len(symbols)} != n-2 = {n - 2}")
    if any(s < 1 or s > n for s in symbols):
        raise InvalidSequence("symbols must lie in 1..n")
    remaining = Counter(symbols)
    leaves = [v for v in range(1, n + 1) if remaining[v] == 0]
    heapq.heapify(leaves)
    edges = []
    for s in symbols:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        remaining[s] -= 1
        if remaining[s] == 0:
            heapq.heappush(leaves, s)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((a, b))
    return Hypergraph(tuple(range(1, n + 1)), tuple(edges))


def prufer_encode(t: Hypergraph) -> tuple[int, ...]:
    """Inverse of prufer_decode; requires a spanning EPR tree."""
    if not is_spanning_epr_tree(t):
        raise NotSpanningTree("can only encode a spanning EPR tree")
    n = t.n
    neighbors: dict[int, set[int]] = {a: set() for a in t.agents}
    for a, b in t.edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    leaves = [v for v in t.agents if len(neighbors[v]) == 1]
    heapq.heapify(leaves)
    symbols = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        nb = neighbors[leaf].pop()
        neighbors[nb].discard(leaf)
        symbols.append(nb)
        if len(neighbors[nb]) == 1:
            heapq.heappush(leaves, nb)
    return tuple(symbols)


def all_spanning_trees(n: int) -> Iterator[Hypergraph]:
    """All n^(n-2) labeled spanning trees on agents 1..n, deterministic order."""
    if not 2 <= n <= TREE_ENUM_MAX_N:
        raise BoundExceeded(f"exhaustive tree enumeration supports 2 <= n <= {TREE_ENUM_MAX_N}")
    for symbols in itertools.product(range(1, n + 1), repeat=n - 2):
        yield prufer_decode(symbols, n)


def random_spanning_tree(n: int, seed: int) -> Hypergraph:
    """Uniform labeled spanning tree via a seeded random Prufer sequence."""
    rng = random.Random(seed)
    symbols = tuple(rng.randrange(1, n + 1) for _ in range(n - 2))
    return prufer_decode(symbols, n)


def random_r_uniform_hypertree(n: int, r: int, seed: int) -> Hypergraph:
    """A seeded random r-uniform entangled hypertree on agents 1..n.

    Grown by repeatedly attaching a fresh hyperedge at a uniformly chosen
    existing vertex together with r-1 fresh vertices, then applying a
    seeded relabeling.  Requires n = m*(r-1) + 1 for some m >= 1.
    """
    if r < 2:
        raise IncompatibleParameters("r must be at least 2")
    if n < r or (n - 1) % (r - 1) != 0:
        raise IncompatibleParameters(f"no m >= 1 satisfies n = m*(r-1)+1 for n={n}, r={r}")
    m = (n - 1) // (r - 1)
    rng = random.Random(seed)
    vertices = list(range(1, r + 1))
    edges = [tuple(vertices)]
    nxt = r + 1
    for _ in range(m - 1):
        attach = rng.choice(vertices)
        fresh = list(range(nxt, nxt + r - 1))
        nxt += r - 1
        edges.append(tuple([attach] + fresh))
        vertices.extend(fresh)
    relabel = list(range(1, n + 1))
    rng.shuffle(relabel)
    mapping = {old: new for old, new in zip(range(1, n + 1), relabel)}
    return Hypergraph(tuple(range(1, n + 1)),
                      tuple(tuple(mapping[v] for v in e) for e in edges))


def all_bicolorings(agents, bound: int = DEFAULT_COLOR_BOUND) -> Iterator[Bicoloring]:
    """The deterministic coloring stream driving the exhaustive witness scan."""
    agents = tuple(sorted(agents))
    if len(agents) > bound:
        raise BoundExceeded(f"{len(agents)} agents exceeds the coloring bound {bound}")
    return iter_bicolorings(agents, bound=bound)
