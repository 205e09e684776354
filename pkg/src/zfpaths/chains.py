"""Forcing chains: extraction, defect detection, and repair rewrites.

A complete forcing run partitions the vertices into |F| chains, one per
initially colored vertex, each an induced path.  Two kinds of defect can
block a parallel-path drawing: a vertex with two non-consecutive neighbors
in another non-trivial chain ("bad"), and a vertex whose two cross
neighbors are witnessed by an inverting segment between the other two
chains ("unfavorite").  The repair rewrites move the offending head into
the witnessing chain, strictly shrinking the defect count each round.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ContractError,
    InternalLogicError,
    NotForcingSetError,
    UnsupportedInputError,
)
from .forcing import ForcingOutcome, closure
from .graphs import Graph, is_induced_path


@dataclass(frozen=True)
class Chain:
    seq: tuple

    @property
    def head(self):
        return self.seq[0]

    @property
    def trivial(self):
        return len(self.seq) == 1

    def position(self, v):
        return self.seq.index(v)

    def before(self, u, v):
        """Chain order: u precedes v in this chain."""
        return self.seq.index(u) < self.seq.index(v)

    def __contains__(self, v):
        return v in self.seq

    def __len__(self):
        return len(self.seq)


@dataclass(frozen=True)
class ChainSet:
    chains: tuple  # Chain objects, sorted by head id
    host: Graph
    origin: frozenset
    run: ForcingRun

    def chain_of(self, v):
        for c in self.chains:
            if v in c:
                return c
        raise KeyError(v)

    def nontrivial(self):
        return [c for c in self.chains if not c.trivial]

    def trivial_count(self):
        return sum(1 for c in self.chains if c.trivial)

    def to_json(self):
        return {"origin": sorted(self.origin), "chains": [list(c.seq) for c in self.chains]}


def extract_chains(outcome: ForcingOutcome) -> ChainSet:
    """Chains of a complete forcing run, resolving forcer ties by lowest id."""
    if not outcome.complete:
        raise NotForcingSetError("chain extraction needs a complete forcing outcome")
    run = outcome.run
    host = outcome.host
    chosen = {}
    for u, v, _ in run.events:
        if v not in chosen or u < chosen[v]:
            chosen[v] = u
    succ = {}
    for v, u in chosen.items():
        if u in succ:
            raise InternalLogicError(f"vertex {u} would force both {succ[u]} and {v}")
        succ[u] = v
    chains = []
    for f in sorted(run.initial):
        seq = [f]
        while seq[-1] in succ:
            seq.append(succ[seq[-1]])
        chains.append(Chain(tuple(seq)))
    cs = ChainSet(chains=tuple(chains), host=host, origin=run.initial, run=run)
    _validate(cs)
    bad = invalid_links(cs)
    if bad:
        raise InternalLogicError(f"extracted chain links outside the run's events: {bad}")
    return cs


def chains_for(g: Graph, colored) -> ChainSet:
    """Convenience: closure then extraction on one host graph."""
    return extract_chains(closure(g, colored))


def _validate(cs: ChainSet):
    """Partition, head, induced-path, and realizability checks on a chain set."""
    seen = []
    for c in cs.chains:
        seen.extend(c.seq)
    if sorted(seen) != list(range(cs.host.n)):
        raise InternalLogicError("chains do not partition the vertex set")
    if frozenset(c.head for c in cs.chains) != cs.origin:
        raise InternalLogicError("chain heads differ from the originating set")
    for c in cs.chains:
        if not is_induced_path(cs.host, c.seq):
            raise InternalLogicError(f"chain {c.seq} is not an induced path")
    if not sequentially_realizable(cs):
        raise InternalLogicError("chains admit no chronological sequence of forces")


def invalid_links(cs: ChainSet):
    """Chain links (u, v) that the synchronous run of the origin cannot realize.

    A link is realizable when u was colored before v and every other
    neighbor of u was colored strictly before v's step.  Freshly extracted
    chain sets always pass; repaired ones may legitimately need a different
    force schedule and are covered by sequentially_realizable instead.
    """
    step = cs.run.step_of
    bad = []
    for c in cs.chains:
        for u, v in zip(c.seq, c.seq[1:]):
            sv = step.get(v)
            su = step.get(u)
            if su is None or sv is None or su >= sv:
                bad.append((u, v))
                continue
            for w in cs.host.neighbors(u):
                if w != v and step.get(w, sv) >= sv:
                    bad.append((u, v))
                    break
    return bad


def sequentially_realizable(cs: ChainSet):
    """Whether some one-force-at-a-time schedule realizes exactly these chains.

    Greedy firing is sound and complete here: a chain step's precondition
    (all neighbors of the forcer but its target colored) is monotone in the
    colored set, so firing order never matters.
    """
    colored = set(cs.origin)
    pointer = [1] * len(cs.chains)
    remaining = cs.host.n - len(colored)
    while remaining:
        fired = False
        for i, c in enumerate(cs.chains):
            j = pointer[i]
            if j >= len(c.seq):
                continue
            u, v = c.seq[j - 1], c.seq[j]
            if all(w in colored for w in cs.host.neighbors(u) if w != v):
                colored.add(v)
                pointer[i] = j + 1
                remaining -= 1
                fired = True
        if not fired:
            return False
    return True


# -- defect detectors -------------------------------------------------------


def bad_vertices(cs: ChainSet):
    """Vertices of a non-trivial chain with two non-consecutive neighbors in
    another non-trivial chain."""
    result = set()
    nontrivial = cs.nontrivial()
    for c1 in nontrivial:
        for v in c1.seq:
            for c2 in nontrivial:
                if c2 is c1:
                    continue
                positions = sorted(c2.position(w) for w in cs.host.neighbors(v) if w in c2)
                if any(q - p >= 2 for p, q in zip(positions, positions[1:])):
                    result.add(v)
    if cs.host.max_degree() <= 3:
        for v in result:
            if cs.chain_of(v).head != v:
                raise InternalLogicError(
                    f"bad vertex {v} is not the head of its chain (degree cap 3)"
                )
    return frozenset(result)


def unfavorite_vertices(cs: ChainSet):
    """Vertices with cross neighbors in two other non-trivial chains witnessed
    by a later/earlier segment between those chains."""
    result = set()
    nontrivial = cs.nontrivial()
    for c1 in nontrivial:
        others = [c for c in nontrivial if c is not c1]
        for x in c1.seq:
            for c2 in others:
                for c3 in others:
                    if c3 is c2:
                        continue
                    if _unfavorite_witness(cs, x, c2, c3) is not None:
                        result.add(x)
    if cs.host.max_degree() <= 3:
        for v in result:
            if cs.chain_of(v).head != v:
                raise InternalLogicError(
                    f"unfavorite vertex {v} is not the head of its chain (degree cap 3)"
                )
    return frozenset(result)


def _unfavorite_witness(cs: ChainSet, x, c2: Chain, c3: Chain):
    """First (a, b) pair witnessing x unfavorite via chains (c2, c3), or None."""
    nbrs = cs.host.neighbors(x)
    for a in nbrs:
        if a not in c2:
            continue
        for b in nbrs:
            if b not in c3:
                continue
            pa = c2.position(a)
            pb = c3.position(b)
            for c in c2.seq[pa + 1 :]:
                for d in cs.host.neighbors(c):
                    if d in c3 and c3.position(d) < pb:
                        return a, b
    return None


# -- repair rewrites --------------------------------------------------------


def _rebuild(host: Graph, chains) -> ChainSet:
    chains = tuple(sorted(chains, key=lambda c: c.head))
    origin = frozenset(c.head for c in chains)
    outcome = closure(host, origin)
    if not outcome.complete:
        raise InternalLogicError(f"rewritten origin {sorted(origin)} is not a forcing set")
    cs = ChainSet(chains=chains, host=host, origin=origin, run=outcome.run)
    _validate(cs)
    return cs


def _head_rewrite(cs: ChainSet, x, c_from: Chain, a):
    """Move head x of its chain onto the witnessing chain after vertex a.

    With R1 the chain of x and R2 = c_from containing a, the new chains are
    x'R2 (suffix from the successor of a) and R2-prefix-through-a + R1.
    """
    c1 = cs.chain_of(x)
    if c1.head != x:
        raise InternalLogicError(f"rewrite target {x} is not a chain head")
    pa = c_from.position(a)
    new_tail = Chain(c_from.seq[pa + 1 :])
    new_merged = Chain(c_from.seq[: pa + 1] + c1.seq)
    rest = [c for c in cs.chains if c is not c1 and c is not c_from]
    return _rebuild(cs.host, rest + [new_tail, new_merged])


def _bad_witness(cs: ChainSet, x):
    """The chain and earlier neighbor witnessing that x is bad."""
    c1 = cs.chain_of(x)
    for c2 in cs.nontrivial():
        if c2 is c1:
            continue
        positions = sorted(c2.position(w) for w in cs.host.neighbors(x) if w in c2)
        if any(q - p >= 2 for p, q in zip(positions, positions[1:])):
            return c2, c2.seq[positions[0]]
    raise InternalLogicError(f"no bad witness found for {x}")


def eliminate_bad(cs: ChainSet) -> ChainSet:
    """A chain set for a same-size forcing set with no bad vertex.

    Repeats the head rewrite on the smallest bad vertex; when the rewrite
    makes the third head bad, a second-stage rewrite moves that head as
    well.  Each round must strictly decrease the bad count.
    """
    if cs.host.max_degree() > 3:
        raise UnsupportedInputError("bad-vertex repair needs maximum degree <= 3")
    if len(cs.origin) != 3:
        raise UnsupportedInputError("bad-vertex repair is proved only for three chains")
    current = cs
    while True:
        bad = bad_vertices(current)
        if not bad:
            return current
        x = min(bad)
        c2, a = _bad_witness(current, x)
        third = [c for c in current.chains if c is not current.chain_of(x) and c is not c2]
        rewritten = _head_rewrite(current, x, c2, a)
        if len(bad_vertices(rewritten)) < len(bad):
            current = rewritten
            continue
        # Second stage: the rewrite made the remaining head bad; move it too.
        if len(third) != 1 or third[0].trivial:
            raise InternalLogicError("bad count failed to drop with no third head to move")
        z = third[0].head
        if z not in bad_vertices(rewritten):
            raise InternalLogicError("bad count failed to drop yet third head is not bad")
        c2z, a2 = _bad_witness(rewritten, z)
        second = _head_rewrite(rewritten, z, c2z, a2)
        if len(bad_vertices(second)) >= len(bad):
            raise InternalLogicError("two-stage rewrite did not decrease the bad count")
        current = second


def eliminate_unfavorite(cs: ChainSet) -> ChainSet:
    """A chain set with no unfavorite vertex, preserving the no-bad property."""
    if cs.host.max_degree() > 3:
        raise UnsupportedInputError("unfavorite repair needs maximum degree <= 3")
    if len(cs.origin) != 3:
        raise UnsupportedInputError("unfavorite repair is proved only for three chains")
    if bad_vertices(cs):
        raise ContractError("unfavorite repair requires a chain set with no bad vertex")
    current = cs
    while True:
        unfav = unfavorite_vertices(current)
        if not unfav:
            return current
        x = min(unfav)
        c1 = current.chain_of(x)
        witness = None
        others = [c for c in current.nontrivial() if c is not c1]
        for c2 in others:
            for c3 in others:
                if c3 is c2:
                    continue
                pair = _unfavorite_witness(current, x, c2, c3)
                if pair is not None:
                    witness = (c2, pair[0])
                    break
            if witness:
                break
        if witness is None:
            raise InternalLogicError(f"no unfavorite witness found for {x}")
        rewritten = _head_rewrite(current, x, witness[0], witness[1])
        if bad_vertices(rewritten):
            raise InternalLogicError("unfavorite rewrite introduced a bad vertex")
        if len(unfavorite_vertices(rewritten)) >= len(unfav):
            raise InternalLogicError("unfavorite rewrite did not decrease the count")
        current = rewritten


# -- order lemmas -----------------------------------------------------------


@dataclass
class OrderLemmaReport:
    violations: list

    @property
    def passed(self):
        return not self.violations

    def by_lemma(self):
        out = {"earlier_cross_neighbor": True, "no_inverting_pair": True, "no_inverting_triple": True}
        for name, _ in self.violations:
            out[name] = False
        return out


def check_order_lemmas(cs: ChainSet) -> OrderLemmaReport:
    """Exhaustive scans of the three chain-order facts; failures indicate bugs.

    Checked facts: a cross neighbor of a forcing vertex is colored before
    every later vertex of that chain; segments between a chain pair never
    invert; and the three-chain mixed configuration never inverts either.
    """
    violations = []
    step = cs.run.step_of
    for c in cs.chains:
        for i, x in enumerate(c.seq[:-1]):
            for z in cs.host.neighbors(x):
                if z in c:
                    continue
                for y in c.seq[i + 1 :]:
                    if step.get(z, 10**9) >= step.get(y, -1):
                        violations.append(("earlier_cross_neighbor", (x, y, z)))
    for c1 in cs.chains:
        for c2 in cs.chains:
            if c2 is c1:
                continue
            segs = [
                (c1.position(u), c2.position(v))
                for u, v in _cross_edges(cs.host, c1, c2)
            ]
            for p1, q1 in segs:
                for p2, q2 in segs:
                    if p1 < p2 and q2 < q1:
                        violations.append(
                            ("no_inverting_pair", (c1.seq[p1], c2.seq[q1], c1.seq[p2], c2.seq[q2]))
                        )
    for c1 in cs.chains:
        for c2 in cs.chains:
            for c3 in cs.chains:
                if len({id(c1), id(c2), id(c3)}) != 3:
                    continue
                for a, b in _cross_edges(cs.host, c1, c2):
                    for c, d in _cross_edges(cs.host, c2, c3):
                        if c2.position(c) < c2.position(b):
                            for x, y in _cross_edges(cs.host, c1, c3):
                                if c1.position(x) > c1.position(a) and c3.position(y) < c3.position(d):
                                    violations.append(
                                        ("no_inverting_triple", (a, b, c, d, x, y))
                                    )
    return OrderLemmaReport(violations=violations)


def _cross_edges(g: Graph, c1: Chain, c2: Chain):
    out = []
    for u in c1.seq:
        for v in g.neighbors(u):
            if v in c2:
                out.append((u, v))
    return out
