"""Sparse random structures on many vertices.

Derived per-dimension inclusion parameters, clique (flag) complexes, and
truncated generation that cuts every draw at a dimension bound r.  Candidate
faces are streamed combinatorially, so nothing here ever enumerates the full
simplex on n vertices; memory stays proportional to the output.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complexes import AmbientComplex, Complex, Hypergraph
from .kernels import clique_stats, sample_graph_words
from .models import rng_from

__all__ = [
    "DerivedDims",
    "TruncatedSample",
    "derived_dims",
    "threshold_schedule",
    "clique_complex",
    "clique_complex_in",
    "algorithm1_truncated",
    "algorithm2_truncated",
    "dimension_stats",
    "closure_dimension_stats",
    "counting_bound",
]

STATS_COLUMNS = ("n", "p1", "samples", "prob_dim_le_r", "prob_dim_eq_r", "mean_r_faces")


def _base_tuple(n: int, p) -> tuple[float, ...]:
    # Base vector (p_0 .. p_{n-1}); shorter input is padded with zeros, so
    # faces of the missing dimensions never appear.  p_0 = 1 is a contract:
    # every vertex is always present.
    vals = [float(x) for x in p]
    if not vals:
        raise ValueError("base probability vector is empty")
    if len(vals) > n:
        raise ValueError(f"base vector has {len(vals)} entries but n = {n}")
    for x in vals:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"probability {x} outside [0, 1]")
    if vals[0] != 1.0:
        raise ValueError("p_0 must be 1 (vertices are always present)")
    return tuple(vals) + (0.0,) * (n - len(vals))


@dataclass(frozen=True)
class DerivedDims:
    """Base vector alongside the two derived per-dimension marginals.

    closure_marginals[k] is the probability that a fixed k-face lies in the
    closure of a Bernoulli hypergraph on n vertices with base vector `base`;
    interior_marginals[k] is the probability that it lies in the simplicial
    part.  Both start at 1.0 for dimension 0.
    """

    n: int
    base: tuple[float, ...]
    closure_marginals: tuple[float, ...]
    interior_marginals: tuple[float, ...]


def derived_dims(n: int, p) -> DerivedDims:
    """Derived vectors for n vertices and base probabilities p (p[0] = 1).

    A k-face sits in the closure iff at least one of its supersets is a
    hyperedge; there are C(n-k-1, i) supersets of dimension k+i, drawn
    independently.  It sits in the simplicial part iff all C(k+1, i+1) of its
    i-dimensional subsets are hyperedges.  Exponents use exact binomials and
    the products run in log space so large n does not underflow.
    """
    return _derived_cached(n, _base_tuple(n, p))


@lru_cache(maxsize=None)
def _derived_cached(n: int, base: tuple[float, ...]) -> DerivedDims:
    closure = []
    interior = []
    for k in range(n):
        log_miss = 0.0
        for i in range(n - k):
            q = base[k + i]
            if q == 0.0:
                continue
            if q == 1.0:
                log_miss = -math.inf
                break
            log_miss += math.comb(n - k - 1, i) * math.log1p(-q)
        closure.append(1.0 - math.exp(log_miss))

        log_keep = 0.0
        for i in range(1, k + 1):
            q = base[i]
            if q == 0.0:
                log_keep = -math.inf
                break
            log_keep += math.comb(k + 1, i + 1) * math.log(q)
        interior.append(math.exp(log_keep))
    return DerivedDims(
        n=n,
        base=base,
        closure_marginals=tuple(closure),
        interior_marginals=tuple(interior),
    )


def threshold_schedule(coefficient: float, denominator: float):
    """The map n -> coefficient * n^(-2/denominator), clamped into [0, 1].

    Denominators r+1 and r select the two threshold regimes for dimension r.
    Values above 1 are clamped with a warning.
    """
    if coefficient <= 0.0 or denominator <= 0.0:
        raise ValueError("coefficient and denominator must be positive")

    def p1(n: int) -> float:
        value = coefficient * float(n) ** (-2.0 / denominator)
        if value > 1.0:
            warnings.warn(f"schedule value {value:.4g} clamped to 1 at n={n}")
            return 1.0
        return value

    return p1


def _graph_data(graph: Hypergraph) -> tuple[list[int], set[frozenset]]:
    verts = []
    edges = set()
    for face in graph.faces():
        if len(face) == 1:
            verts.append(face[0])
        elif len(face) == 2:
            edges.add(frozenset(face))
        else:
            raise ValueError(f"not a graph: face {face} has dimension {len(face) - 1}")
    vert_set = set(verts)
    for e in edges:
        if not e <= vert_set:
            raise ValueError(f"edge {sorted(e)} has an endpoint with no vertex face")
    return sorted(vert_set), edges


def clique_complex(graph: Hypergraph) -> Complex:
    """Flag complex of a graph: every clique becomes a face.

    Materializes the whole complex, so this is for small graphs; the
    statistics path works on packed adjacency words instead and never builds
    the complex.
    """
    verts, edges = _graph_data(graph)
    layer = [(v,) for v in verts]
    faces = list(layer)
    while layer:
        nxt = []
        for clique in layer:
            for v in verts:
                if v <= clique[-1]:
                    continue
                if all(frozenset((u, v)) in edges for u in clique):
                    nxt.append(clique + (v,))
        faces.extend(nxt)
        layer = nxt
    amb = AmbientComplex(faces)
    return Complex(amb, amb.full_mask)


def clique_complex_in(graph: Hypergraph, ambient: AmbientComplex) -> Complex:
    """Flag complex of a graph intersected with an ambient complex.

    Keeps exactly the ambient faces all of whose vertex pairs are edges of
    the graph; every ambient vertex passes vacuously.
    """
    verts, edges = _graph_data(graph)
    labels = set(ambient.vertex_labels)
    if not set(verts) <= labels:
        raise ValueError("graph has vertices outside the ambient complex")
    mask = 0
    for i in range(ambient.num_faces):
        vs = ambient.face_vertices(i)
        if all(frozenset(pair) in edges for pair in itertools.combinations(vs, 2)):
            mask |= 1 << i
    return Complex(ambient, mask)


@dataclass(frozen=True)
class TruncatedSample:
    """One truncated draw: the hyperedge part and the staged complex part.

    Faces are ascending vertex tuples labelled 1..n, every one of dimension
    at most r.  Plain tuples, not Hypergraph/Complex objects: at the sizes
    this generator targets, materializing an ambient complex would defeat
    the O(output) memory contract.
    """

    n: int
    r: int
    hyper_faces: tuple[tuple[int, ...], ...]
    complex_faces: tuple[tuple[int, ...], ...]


def _bernoulli_faces(n, base, r, rng) -> list[tuple[int, ...]]:
    # Streams the C(n, d+1) candidate faces per dimension in lexicographic
    # order, drawing uniforms in fixed-size blocks.  Uniform consumption
    # depends only on (n, r), never on the outcomes.
    kept = []
    for d in range(r + 1):
        q = base[d]
        faces = itertools.combinations(range(1, n + 1), d + 1)
        remaining = math.comb(n, d + 1)
        while remaining:
            block = min(remaining, 1 << 14)
            us = rng.random(block)
            chunk = itertools.islice(faces, block)
            kept.extend(itertools.compress(chunk, us < q))
            remaining -= block
    return kept


def _staged_complex_faces(n, closure_p, r, rng) -> list[tuple[int, ...]]:
    # Stage-by-dimension draw: a (d+1)-subset is a candidate once all of its
    # d-subsets were kept, and gets one coin at closure_p[d].  Candidates are
    # visited in lexicographic order, so the stream layout is reproducible.
    candidates = [(v,) for v in range(1, n + 1)]
    us = rng.random(n)
    layer = list(itertools.compress(candidates, us < closure_p[0]))
    faces = list(layer)
    for d in range(1, r + 1):
        prev = set(layer)
        cands = []
        for face in layer:
            for v in range(face[-1] + 1, n + 1):
                ext = face + (v,)
                if all(ext[:i] + ext[i + 1 :] in prev for i in range(d)):
                    cands.append(ext)
        us = rng.random(len(cands))
        layer = list(itertools.compress(cands, us < closure_p[d]))
        faces.extend(layer)
    return faces


def algorithm1_truncated(n: int, p, r: int, rng) -> TruncatedSample:
    """Draw the dimension-<=r part of a Bernoulli hypergraph together with a
    staged complex under the derived closure vector.

    The hypergraph part restricts the full Bernoulli draw exactly: faces of
    dimension <= r are independent, so cutting at r does not disturb their
    joint law.  The complex part is a stage-by-dimension draw with the full-n
    closure marginals; stages never look above the current dimension, so the
    cut is exact there too.  The two parts are independent.  The hypergraph
    part consumes its uniforms first.
    """
    if not 0 <= r < n:
        raise ValueError(f"need 0 <= r < n, got r={r}, n={n}")
    base = _base_tuple(n, p)
    dd = _derived_cached(n, base)
    hyper = _bernoulli_faces(n, base, r, rng)
    cx = _staged_complex_faces(n, dd.closure_marginals, r, rng)
    return TruncatedSample(n=n, r=r, hyper_faces=tuple(hyper), complex_faces=tuple(cx))


def algorithm2_truncated(n: int, p, r: int, rng) -> tuple[tuple[int, ...], ...]:
    """Draw the dimension-<=r part of the simplicial part of a Bernoulli
    hypergraph.

    A face of dimension <= r belongs to the simplicial part iff all of its
    nonempty subsets are hyperedges, and those subsets also have dimension
    <= r, so drawing the hypergraph only up to r is exact.  Membership is
    decided by facet recursion: keep a face iff it was drawn and all of its
    facets were kept.
    """
    if not 0 <= r < n:
        raise ValueError(f"need 0 <= r < n, got r={r}, n={n}")
    base = _base_tuple(n, p)
    drawn = _bernoulli_faces(n, base, r, rng)
    kept: list[tuple[int, ...]] = []
    prev: set = set()
    for d in range(r + 1):
        layer = [f for f in drawn if len(f) == d + 1]
        if d > 0:
            layer = [
                f
                for f in layer
                if all(f[:i] + f[i + 1 :] in prev for i in range(d + 1))
            ]
        kept.extend(layer)
        prev = set(layer)
    return tuple(kept)


def dimension_stats(n_values, schedule, r, samples, seed, *, streams_from=0):
    """Clique-complex dimension census over a sweep of n.

    For each n, draws `samples` graphs G(n, schedule(n)) and counts cliques:
    the flag complex has dimension <= r iff the graph has no (r+2)-clique,
    dimension exactly r iff additionally some (r+1)-clique exists, and its
    r-face count is the (r+1)-clique count.  Each n gets its own generator
    stream, so rows are reproducible independently of the sweep order.

    Returns one dict per n with keys matching STATS_COLUMNS.
    """
    if r < 1:
        raise ValueError("dimension census needs r >= 1")
    rows = []
    for offset, n in enumerate(n_values):
        rng = rng_from(seed, stream=streams_from + offset)
        p1 = schedule(n) if callable(schedule) else float(schedule)
        le = eq = 0
        total_faces = 0
        for _ in range(samples):
            words = sample_graph_words(n, p1, rng)
            count, exists = clique_stats(words, r + 1, r + 2)
            if not exists:
                le += 1
                if count > 0:
                    eq += 1
            total_faces += count
        rows.append(
            {
                "n": n,
                "p1": p1,
                "samples": samples,
                "prob_dim_le_r": le / samples,
                "prob_dim_eq_r": eq / samples,
                "mean_r_faces": total_faces / samples,
            }
        )
    return rows


def closure_dimension_stats(n_values, base_template, r, samples, seed, *, streams_from=0):
    """Dimension census for the closure of a Bernoulli hypergraph.

    The closure's dimension is the top hyperedge dimension, so the staged
    probabilities are exact binomial products; each sample spends one uniform
    on the coupled indicator pair (dim <= r-1 nests inside dim <= r).  The
    template supplies the leading base entries for every n (truncated or
    zero-padded as needed), and mean_r_faces reports the exact expectation
    C(n, r+1) * closure_marginal[r] rather than a sampled count.
    """
    rows = []
    for offset, n in enumerate(n_values):
        rng = rng_from(seed, stream=streams_from + offset)
        base = _base_tuple(n, list(base_template)[:n])
        log_le = 0.0
        for k in range(r + 1, n):
            if base[k] == 1.0:
                log_le = -math.inf
                break
            if base[k] > 0.0:
                log_le += math.comb(n, k + 1) * math.log1p(-base[k])
        p_le = math.exp(log_le)
        if base[r] == 1.0:
            p_le_below = 0.0
        else:
            p_le_below = p_le * math.exp(math.comb(n, r + 1) * math.log1p(-base[r]))
        us = rng.random(samples)
        le = int(np.count_nonzero(us < p_le))
        eq = int(np.count_nonzero((us >= p_le_below) & (us < p_le)))
        dd = _derived_cached(n, base)
        rows.append(
            {
                "n": n,
                "p1": base[1] if n > 1 else 1.0,
                "samples": samples,
                "prob_dim_le_r": le / samples,
                "prob_dim_eq_r": eq / samples,
                "mean_r_faces": math.comb(n, r + 1) * dd.closure_marginals[r],
            }
        )
    return rows


def counting_bound(n: int, p1: float, k: int, r: int) -> float:
    """Printed tail bound for the event that a flag complex on G(n, p1) has
    at most k faces of dimension r:

        C(n, k(r+1)) * (1 - p1)^(C(n,2) - C(k(r+1), 2))

    Evaluated in log space and returned as-is, possibly above 1.  This is a
    report-only quantity: it is not a valid upper bound (see the tests), so
    nothing in the package asserts against it.
    """
    m = k * (r + 1)
    if m > n:
        return 0.0
    exponent = math.comb(n, 2) - math.comb(m, 2)
    if p1 >= 1.0:
        return 0.0 if exponent > 0 else float(math.comb(n, m))
    log_val = math.log(math.comb(n, m)) + exponent * math.log1p(-p1)
    return math.exp(log_val)
