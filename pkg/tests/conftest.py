"""Shared test oracles, deliberately independent of the library internals."""

import random

import pytest

from zfpaths.graphs import Graph


def sequential_closure(g: Graph, colored):
    """Greedy one-force-at-a-time closure; the independent schedule oracle."""
    colored = set(colored)
    while True:
        fired = False
        for u in sorted(colored):
            uncolored = [v for v in g.neighbors(u) if v not in colored]
            if len(uncolored) == 1:
                colored.add(uncolored[0])
                fired = True
                break
        if not fired:
            return frozenset(colored)


def random_graph(rng: random.Random, n, p=0.4, max_degree=None):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    g = Graph(n, edges)
    if max_degree is not None:
        while g.max_degree() > max_degree:
            victims = [e for e in g.edges if g.degree(e[0]) > max_degree or g.degree(e[1]) > max_degree]
            e = rng.choice(victims)
            g = Graph(n, [x for x in g.edges if x != e])
    return g


@pytest.fixture
def rng():
    return random.Random(20240811)
