"""Pattern-constrained symmetric matrices and maximum-nullity estimation.

A pattern matrix for a graph has arbitrary diagonal, nonzero entries on
edges, and exact zeros elsewhere.  The maximum nullity over such matrices
is bounded above by the forcing number; lower bounds are produced here by
driving the smallest eigenvalues to zero with gradient descent and
certifying the result.  Certificates are validated with an in-house Jacobi
eigensolver, independent of the LAPACK path used inside the optimizer.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, NumericalFailureError, UnsupportedSizeError
from .forcing import forcing_number
from .graphs import Graph

EDGE_MIN = 1e-3  # pattern membership: |weight| >= EDGE_MIN
TOL_ZERO = 1e-8  # relative zero threshold for nullity counting
GAP_FACTOR = 10  # certified gap must exceed GAP_FACTOR * TOL_ZERO
_PENALTY = 10.0
_MG_CHECK_CAP = 12  # forcing-number cross-check cap inside certificates


@dataclass(frozen=True)
class PatternMatrix:
    host: Graph
    diag: tuple
    weights: dict  # (u, v) with u < v -> nonzero weight

    def __post_init__(self):
        if len(self.diag) != self.host.n:
            raise ContractError("diagonal length must equal the vertex count")
        if set(self.weights) != set(self.host.edges):
            raise ContractError("weights must cover exactly the host's edges")
        small = [e for e, w in self.weights.items() if abs(w) < EDGE_MIN]
        if small:
            raise ContractError(f"edge weights below {EDGE_MIN}: {small}")

    def as_array(self):
        a = np.zeros((self.host.n, self.host.n))
        for i, d in enumerate(self.diag):
            a[i, i] = d
        for (u, v), w in self.weights.items():
            a[u, v] = a[v, u] = w
        return a

    def to_json_obj(self, eigenvalues=None, k=None):
        obj = {
            "n": self.host.n,
            "edges": [list(e) for e in self.host.edges],
            "diag": list(self.diag),
            "weights": {f"{u}-{v}": w for (u, v), w in sorted(self.weights.items())},
        }
        if eigenvalues is not None:
            obj["eigenvalues"] = list(eigenvalues)
        if k is not None:
            obj["k"] = k
        obj["tol_zero"] = TOL_ZERO
        return obj


def pattern_from_json_obj(obj) -> PatternMatrix:
    host = Graph(obj["n"], [tuple(e) for e in obj["edges"]])
    weights = {}
    for key, w in obj["weights"].items():
        u, v = key.split("-")
        weights[(int(u), int(v))] = w
    return PatternMatrix(host=host, diag=tuple(obj["diag"]), weights=weights)


# -- dense symmetric eigensolver (cyclic Jacobi) -----------------------------

_SPECTRUM_CAP = 64
_JACOBI_SWEEPS = 100
_JACOBI_TOL = 1e-12


def jacobi_eigenvalues(a, with_vectors=False):
    """Eigen decomposition by cyclic Jacobi rotations.

    Sweeps rotate away every off-diagonal pair until the off-diagonal norm
    drops below 1e-12 times the Frobenius norm; more than 100 sweeps is a
    convergence failure.
    """
    a = np.array(a, dtype=float)
    if not np.all(np.isfinite(a)):
        raise NumericalFailureError("matrix contains non-finite entries")
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        vals = np.zeros(n)
        return (vals, v) if with_vectors else vals
    threshold = _JACOBI_TOL * norm

    def offdiag(m):
        # summing the off-diagonal squares directly avoids the catastrophic
        # cancellation of ||M||_F^2 - ||diag||^2 near convergence
        hollow = m.copy()
        np.fill_diagonal(hollow, 0.0)
        return float(np.linalg.norm(hollow))

    for _ in range(_JACOBI_SWEEPS):
        if offdiag(a) < threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q
    else:
        raise NumericalFailureError("Jacobi sweeps did not converge in 100 sweeps")
    vals = np.diag(a).copy()
    order = np.argsort(vals)
    vals = vals[order]
    v = v[:, order]
    return (vals, v) if with_vectors else vals


def spectrum(a: PatternMatrix):
    """All eigenvalues in ascending order."""
    if a.host.n > _SPECTRUM_CAP:
        raise UnsupportedSizeError(f"spectrum capped at n = {_SPECTRUM_CAP}")
    if a.host.n == 0:
        return ()
    return tuple(jacobi_eigenvalues(a.as_array()))


def nullity_of(a: PatternMatrix, tol_zero=TOL_ZERO):
    """Count of eigenvalues below the relative zero threshold."""
    if tol_zero <= 0:
        raise ContractError("tol_zero must be positive")
    arr = a.as_array()
    scale = max(1.0, float(np.linalg.norm(arr)))
    vals = spectrum(a)
    return sum(1 for lam in vals if abs(lam) < tol_zero * scale)


# -- nullity maximization -----------------------------------------------------

_OPT_CAP = 32
_CLUSTER_REL = 1e-9


@dataclass(frozen=True)
class NullityCertificate:
    matrix: PatternMatrix
    k: int
    eigenvalues: tuple  # sorted by absolute value
    tol_zero: float
    gap: float

    def to_json_obj(self):
        return self.matrix.to_json_obj(eigenvalues=self.eigenvalues, k=self.k)


@dataclass(frozen=True)
class NotAchieved:
    target: int
    best_k: int
    restarts: int


def certificate_from_json_obj(obj) -> NullityCertificate:
    pm = pattern_from_json_obj(obj)
    cert = certify(pm, obj["k"])
    if cert is None:
        raise ContractError("stored matrix no longer certifies the claimed nullity")
    return cert


def certify(pm: PatternMatrix, k):
    """Certificate for nullity k, or None when the invariants fail.

    The k smallest absolute eigenvalues must sit below the zero threshold
    with a tenfold gap to the next one, and k may not exceed the forcing
    number on small subcubic hosts.
    """
    arr = pm.as_array()
    scale = max(1.0, float(np.linalg.norm(arr)))
    vals = jacobi_eigenvalues(arr)
    by_abs = sorted(vals, key=abs)
    if k > len(by_abs):
        return None
    if any(abs(lam) >= TOL_ZERO * scale for lam in by_abs[:k]):
        return None
    gap = abs(by_abs[k]) if k < len(by_abs) else math.inf
    if gap < GAP_FACTOR * TOL_ZERO * scale:
        return None
    host = pm.host
    if host.max_degree() <= 3 and host.n <= _MG_CHECK_CAP:
        if k > forcing_number(host)[0]:
            return None
    return NullityCertificate(
        matrix=pm, k=k, eigenvalues=tuple(by_abs), tol_zero=TOL_ZERO, gap=gap
    )


def _objective(g: Graph, diag, weights, target):
    """Sum of the target smallest squared eigenvalues plus the pattern penalty,
    with its gradient in (diag, weights) coordinates."""
    n = g.n
    a = np.zeros((n, n))
    a[np.arange(n), np.arange(n)] = diag
    for idx, (u, v) in enumerate(g.edges):
        a[u, v] = a[v, u] = weights[idx]
    vals, vecs = np.linalg.eigh(a)
    order = np.argsort(np.abs(vals))
    selected = order[:target]
    scale = max(1.0, float(np.linalg.norm(a)))
    # group equal eigenvalues; gradients average over each degenerate cluster
    sorted_idx = np.argsort(vals)
    cluster_of = {}
    current = [sorted_idx[0]] if n else []
    clusters = []
    for i in sorted_idx[1:]:
        if abs(vals[i] - vals[current[-1]]) < _CLUSTER_REL * scale:
            current.append(i)
        else:
            clusters.append(current)
            current = [i]
    if len(current):
        clusters.append(current)
    for cl in clusters:
        for i in cl:
            cluster_of[i] = cl
    f = 0.0
    grad_mat = np.zeros((n, n))
    for i in selected:
        lam = vals[i]
        f += lam * lam
        cl = cluster_of[i]
        mean_outer = np.zeros((n, n))
        for j in cl:
            mean_outer += np.outer(vecs[:, j], vecs[:, j])
        mean_outer /= len(cl)
        grad_mat += 2.0 * lam * mean_outer
    grad_diag = np.diag(grad_mat).copy()
    grad_w = np.zeros(len(g.edges))
    for idx, (u, v) in enumerate(g.edges):
        grad_w[idx] = 2.0 * grad_mat[u, v]
    for idx in range(len(g.edges)):
        w = weights[idx]
        short = EDGE_MIN - abs(w)
        if short > 0:
            f += _PENALTY * short * short
            grad_w[idx] += -2.0 * _PENALTY * short * math.copysign(1.0, w if w else 1.0)
    return f, grad_diag, grad_w


def eigenvalue_gradient(g: Graph, diag, weights, index):
    """Gradient of one (simple) eigenvalue in (diag, weights) coordinates.

    Entry derivatives are v_u*v_v, doubled off the diagonal because a weight
    occupies two symmetric matrix entries.
    """
    n = g.n
    a = np.zeros((n, n))
    a[np.arange(n), np.arange(n)] = diag
    for idx, (u, v) in enumerate(g.edges):
        a[u, v] = a[v, u] = weights[idx]
    vals, vecs = np.linalg.eigh(a)
    vec = vecs[:, index]
    grad_diag = vec * vec
    grad_w = np.array([2.0 * vec[u] * vec[v] for u, v in g.edges])
    return vals[index], grad_diag, grad_w


def _certify_best(pm_args, target):
    """Largest k <= target that certifies on this matrix, with its certificate."""
    g, diag, weights = pm_args
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(weights))):
        return 0, None
    if any(abs(w) < EDGE_MIN for w in weights):
        return 0, None
    pm = PatternMatrix(
        host=g,
        diag=tuple(float(d) for d in diag),
        weights={e: float(weights[i]) for i, e in enumerate(g.edges)},
    )
    for k in range(target, 0, -1):
        cert = certify(pm, k)
        if cert is not None:
            return k, cert
    return 0, None


def maximize_nullity(g: Graph, target, budget=(50, 2000), seed=0):
    """Lower-bound search: drive the target smallest eigenvalues to zero.

    Runs gradient descent with restart seeds seed, seed+1, ...; returns the
    first certificate reaching the target, else NotAchieved with the best
    certified k seen.  Certified results are sound lower bounds on the
    maximum nullity; failure proves nothing.
    """
    if g.n > _OPT_CAP:
        raise UnsupportedSizeError(f"nullity optimization capped at n = {_OPT_CAP}")
    if not 1 <= target <= g.n:
        raise ContractError(f"target must lie in 1..{g.n}")
    restarts, iters = budget
    m = len(g.edges)
    best_k = 0
    for r in range(restarts):
        rng = np.random.default_rng(seed + r)
        diag = rng.uniform(-1.0, 1.0, g.n)
        weights = rng.uniform(0.5, 1.5, m) * rng.choice([-1.0, 1.0], m)
        step = 0.05
        f, gd, gw = _objective(g, diag, weights, target)
        for it in range(iters):
            trial_d = diag - step * gd
            trial_w = weights - step * gw
            f2, gd2, gw2 = _objective(g, trial_d, trial_w, target)
            # strict improvement only: accepting f2 == f lets a step of 1.0
            # oscillate between sign-flipped iterates forever
            if math.isfinite(f2) and f2 < f:
                diag, weights, f, gd, gw = trial_d, trial_w, f2, gd2, gw2
                step = min(step * 1.2, 1.0)
            else:
                step *= 0.5
                if step < 1e-14:
                    break
            if (it + 1) % 25 == 0 and f < 1e-12:
                k, cert = _certify_best((g, diag, weights), target)
                best_k = max(best_k, k)
                if cert is not None and k == target:
                    return cert
        k, cert = _certify_best((g, diag, weights), target)
        best_k = max(best_k, k)
        if cert is not None and k == target:
            return cert
    return NotAchieved(target=target, best_k=best_k, restarts=restarts)


# -- the degree-three family with forcing number 3 and nullity 2 -------------


def is_figure8(g: Graph):
    """Detect a 5-cycle whose every vertex carries one pendant path.

    Cycle vertices must have degree exactly 3; each pendant path has at
    least one edge, internal degrees 2 and tip degree 1; the paths are
    disjoint and exhaust the graph.  Returns (flag, decomposition).
    """
    n = g.n
    if n < 10:
        return False, None
    import itertools as it

    for combo in it.combinations(range(n), 5):
        if any(g.degree(v) != 3 for v in combo):
            continue
        inside = set(combo)
        if any(sum(1 for w in g.neighbors(v) if w in inside) != 2 for v in combo):
            continue
        cycle = _arrange_cycle(g, combo)
        if cycle is None:
            continue
        paths = []
        used = set(combo)
        ok = True
        for c in cycle:
            start = next(w for w in g.neighbors(c) if w not in inside)
            path = []
            prev, cur = c, start
            while True:
                if cur in used:
                    ok = False
                    break
                path.append(cur)
                used.add(cur)
                deg = g.degree(cur)
                if deg == 1:
                    break
                if deg != 2:
                    ok = False
                    break
                nxt = next(w for w in g.neighbors(cur) if w != prev)
                prev, cur = cur, nxt
            if not ok:
                break
            paths.append(tuple(path))
        if ok and len(used) == n:
            return True, {"cycle": cycle, "paths": tuple(paths)}
    return False, None


def _arrange_cycle(g: Graph, combo):
    """Order a 5-subset as a cycle, or None; starts at the smallest vertex."""
    start = combo[0]
    inside = set(combo)
    nbrs = [w for w in g.neighbors(start) if w in inside]
    if len(nbrs) != 2:
        return None
    path = [start, min(nbrs)]
    while len(path) < 5:
        cur = path[-1]
        nxt = [w for w in g.neighbors(cur) if w in inside and w != path[-2]]
        if len(nxt) != 1:
            return None
        path.append(nxt[0])
    if not g.adjacent(path[-1], start):
        return None
    return tuple(path)


# -- classification ------------------------------------------------------------


TAG_PATH = "Path_FM1"
TAG_TWO = "TwoParallel_FM2"
TAG_FIG8 = "Figure8_F3M2"
TAG_THREE = "ThreeParallel_FM3"
TAG_BEYOND = "Beyond"


@dataclass(frozen=True)
class Classification:
    tag: str
    f: int
    m: int | None
    mr: int | None = None  # minimum rank n - m, reported only where m is exact

    def to_json_obj(self):
        # wire format carries exactly tag/f/m; mr stays an API-level extra
        return {"tag": self.tag, "f": self.f, "m": self.m}


def classify(g: Graph) -> Classification:
    """Forcing number and exact maximum nullity for subcubic graphs with F <= 3."""
    f = forcing_number(g)[0]
    if g.max_degree() > 3 or f >= 4:
        return Classification(tag=TAG_BEYOND, f=f, m=None)
    if f == 1:
        return Classification(tag=TAG_PATH, f=f, m=1, mr=g.n - 1)
    if f == 2:
        return Classification(tag=TAG_TWO, f=f, m=2, mr=g.n - 2)
    flag, _ = is_figure8(g)
    if flag:
        return Classification(tag=TAG_FIG8, f=f, m=2, mr=g.n - 2)
    return Classification(tag=TAG_THREE, f=f, m=3, mr=g.n - 3)


def certificate_to_json(cert: NullityCertificate):
    return json.dumps(cert.to_json_obj())
