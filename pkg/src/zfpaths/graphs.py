"""Simple undirected graphs: representation, graph6 codec, predicates, enumeration.

Vertex ids are dense integers 0..n-1.  Graphs are immutable after
construction and safe to share between workers.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import (
    GraphFormatError,
    InvalidSequenceError,
    InvalidVertexError,
    UnsupportedSizeError,
)


class Graph:
    """A simple undirected graph on vertices 0..n-1 with set-semantics edges."""

    __slots__ = ("n", "edges", "_adj")

    def __init__(self, n, edges=()):
        if n < 0:
            raise InvalidVertexError(f"vertex count must be nonnegative, got {n}")
        norm = set()
        for u, v in edges:
            if u == v:
                raise InvalidVertexError(f"loop at vertex {u} not allowed")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u},{v}) outside 0..{n - 1}")
            norm.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = tuple(sorted(norm))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._adj = tuple(adj)

    # -- basic queries ---------------------------------------------------

    def adjacent(self, u, v):
        self._check(u)
        self._check(v)
        return bool(self._adj[u] >> v & 1)

    def neighbors_mask(self, u):
        self._check(u)
        return self._adj[u]

    def neighbors(self, u):
        return tuple(_mask_bits(self.neighbors_mask(u)))

    def degree(self, u):
        return self.neighbors_mask(u).bit_count()

    def max_degree(self):
        return max((m.bit_count() for m in self._adj), default=0)

    @property
    def edge_count(self):
        return len(self.edges)

    def _check(self, u):
        if not (0 <= u < self.n):
            raise InvalidVertexError(f"vertex {u} outside 0..{self.n - 1}")

    # -- structure -------------------------------------------------------

    def is_connected(self):
        if self.n <= 1:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in _mask_bits(frontier):
                nxt |= self._adj[u]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def components(self):
        """Vertex sets of connected components, each sorted, ordered by minimum."""
        unseen = set(range(self.n))
        comps = []
        while unseen:
            root = min(unseen)
            comp = {root}
            stack = [root]
            while stack:
                u = stack.pop()
                for v in _mask_bits(self._adj[u]):
                    if v not in comp:
                        comp.add(v)
                        stack.append(v)
            comps.append(tuple(sorted(comp)))
            unseen -= comp
        return comps

    def relabel(self, perm):
        """New graph with vertex u renamed perm[u]."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidVertexError("relabeling must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


def _mask_bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# -- constructors for common families ------------------------------------


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    if n < 3:
        raise InvalidVertexError("cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty_graph(n):
    return Graph(n)


def fig8_graph(lengths):
    """Five-cycle 0..4 with a pendant path of the given length at each cycle vertex."""
    if len(lengths) != 5 or any(l < 1 for l in lengths):
        raise InvalidVertexError("need five pendant path lengths, each >= 1")
    edges = [(i, (i + 1) % 5) for i in range(5)]
    nxt = 5
    for i, length in enumerate(lengths):
        prev = i
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def disjoint_union(graphs):
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


# -- graph6 codec ----------------------------------------------------------


def _pair_order(n):
    """Upper-triangle pairs in graph6 bit order (column-major by larger endpoint)."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def parse_graph6(text):
    """Decode a single graph6 record (single-byte size form, n <= 62)."""
    if not text:
        raise GraphFormatError("empty graph6 record", offset=0)
    try:
        raw = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise GraphFormatError("non-ASCII byte in graph6 record", offset=exc.start) from None
    for off, byte in enumerate(raw):
        if not 63 <= byte <= 126:
            raise GraphFormatError(f"character {byte!r} outside printable range 63..126", offset=off)
    if raw[0] == 126:
        raise UnsupportedSizeError("multi-byte graph6 size form (n > 62) is not supported")
    n = raw[0] - 63
    pairs = _pair_order(n)
    nbody = -(-len(pairs) // 6)  # ceil division
    body = raw[1:]
    if len(body) < nbody:
        raise GraphFormatError(
            f"record too short: need {nbody} body characters, got {len(body)}", offset=len(raw)
        )
    if len(body) > nbody:
        raise GraphFormatError("trailing garbage after graph6 record", offset=1 + nbody)
    bits = []
    for byte in body:
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for extra, bit in enumerate(bits[len(pairs):]):
        if bit:
            raise GraphFormatError("nonzero padding bit", offset=1 + (len(pairs) + extra) // 6)
    edges = [pair for pair, bit in zip(pairs, bits) if bit]
    return Graph(n, edges)


def encode_graph6(g):
    """Encode a graph with n <= 62 as a single graph6 record."""
    if g.n > 62:
        raise UnsupportedSizeError(f"graph6 single-byte size form needs n <= 62, got {g.n}")
    pairs = _pair_order(g.n)
    bits = [1 if g.adjacent(i, j) else 0 for i, j in pairs]
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = val << 1 | b
        out.append(chr(63 + val))
    return "".join(out)


def read_graph6_file(path):
    """Graphs from a file with one graph6 record per line; '#' lines are comments."""
    graphs = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            graphs.append(parse_graph6(line))
    return graphs


# -- induced paths ---------------------------------------------------------


def is_induced_path(g, seq):
    """True iff consecutive members are adjacent and no others are.

    A single vertex and the empty sequence count as induced paths.
    """
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        raise InvalidSequenceError(f"repeated vertex in sequence {seq}")
    for u in seq:
        g._check(u)
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            want = j == i + 1
            if g.adjacent(u, seq[j]) != want:
                return False
    return True


# -- canonical forms (brute force over all relabelings) --------------------

_ISO_CAP = 10
_PERM_CHUNK = 200_000


@lru_cache(maxsize=8)
def _perm_tables(n):
    """All n! permutations and the pair-index gather table, for small n."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int8)
    pairs = _pair_order(n)
    pidx = np.zeros((n, n), dtype=np.int16)
    for t, (i, j) in enumerate(pairs):
        pidx[i, j] = pidx[j, i] = t
    rows = perms[:, [i for i, _ in pairs]].astype(np.intp)
    cols = perms[:, [j for _, j in pairs]].astype(np.intp)
    gather = pidx[rows, cols]
    return perms, gather


def _bit_vector(g):
    pairs = _pair_order(g.n)
    v = np.zeros(len(pairs), dtype=np.uint64)
    for t, (i, j) in enumerate(pairs):
        if g.adjacent(i, j):
            v[t] = 1
    return v


def canonical_form(g):
    """Minimum graph6 encoding over all vertex relabelings.

    Equal strings characterize isomorphic graphs.  Capped at n = 10; the
    permutation sweep is factorial by design (desk scale, auditable).
    """
    if g.n > _ISO_CAP:
        raise UnsupportedSizeError(f"canonical_form capped at n = {_ISO_CAP}, got {g.n}")
    if g.n <= 1:
        return encode_graph6(g)
    v = _bit_vector(g)
    npairs = len(v)
    weights = (np.uint64(1) << np.arange(npairs - 1, -1, -1, dtype=np.uint64)).astype(np.uint64)
    if g.n <= 9:
        perms, gather = _perm_tables(g.n)
        packed = v[gather] @ weights
        best = int(np.argmin(packed))
        perm = perms[best]
    else:
        pairs = _pair_order(g.n)
        pidx = np.zeros((g.n, g.n), dtype=np.int16)
        for t, (i, j) in enumerate(pairs):
            pidx[i, j] = pidx[j, i] = t
        icols = [i for i, _ in pairs]
        jcols = [j for _, j in pairs]
        best_val = None
        perm = None
        it = itertools.permutations(range(g.n))
        while True:
            chunk = list(itertools.islice(it, _PERM_CHUNK))
            if not chunk:
                break
            parr = np.array(chunk, dtype=np.int8)
            gather = pidx[parr[:, icols].astype(np.intp), parr[:, jcols].astype(np.intp)]
            packed = v[gather] @ weights
            k = int(np.argmin(packed))
            if best_val is None or packed[k] < best_val:
                best_val = packed[k]
                perm = parr[k]
    # perm maps new label -> original vertex, so relabel by its inverse
    inverse = [0] * g.n
    for pos, orig in enumerate(perm):
        inverse[orig] = pos
    return encode_graph6(g.relabel(inverse))


# -- exhaustive enumeration of connected subcubic graphs -------------------

_ENUM_CAP = 8


@lru_cache(maxsize=None)
def enumerate_connected_subcubic(n):
    """One representative per isomorphism class of connected graphs with max degree <= 3.

    Built by repeatedly attaching a new vertex to 1..3 existing vertices of
    degree < 3 (every connected graph has a build order of this shape), with
    duplicates rejected through canonical forms.  Output is sorted by
    canonical form, so the order is deterministic.
    """
    if not 1 <= n <= _ENUM_CAP:
        raise UnsupportedSizeError(f"built-in generator handles 1 <= n <= {_ENUM_CAP}, got {n}")
    if n == 1:
        return [Graph(1)]
    by_canon = {}
    for g in enumerate_connected_subcubic(n - 1):
        eligible = [u for u in range(g.n) if g.degree(u) < 3]
        for size in (1, 2, 3):
            for subset in itertools.combinations(eligible, size):
                cand = Graph(g.n + 1, list(g.edges) + [(u, g.n) for u in subset])
                if cand.max_degree() > 3:
                    continue
                key = canonical_form(cand)
                if key not in by_canon:
                    by_canon[key] = cand
    return [by_canon[k] for k in sorted(by_canon)]
