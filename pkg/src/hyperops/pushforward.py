"""Exact distributions on the subset lattice and their operator pushforwards.

A distribution is a dense vector indexed by face-index masks, so exactness
is limited to ambients with at most TABLE_LIMIT faces.  Pushing through a
unary operator is a weighted bincount over the operator's lookup table;
binary operators push the independent coupling of two distributions.

The closed-form transforms turn a product law into the product law of its
image: complement flips p; closure yields a complex law with
p'(t) = 1 - prod_{s >= t} (1 - p(s)); interior-complex yields a hypergraph
law with p''(t) = prod_{s <= t} p(s); intersections multiply the transformed
probabilities and unions combine them as 1 - (1-a)(1-b).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import AmbientComplex, Hypergraph, Complex, iter_bits
from .models import resolve_probabilities, pmf_complex
from .operators import (
    TABLE_LIMIT,
    closure_mask,
    closure_table,
    complement_mask,
    extension_mask,
    external_faces_mask,
    interior_complex_mask,
    interior_complex_table,
    interior_mask,
    complement_table,
    extension_table,
    interior_table,
)
from .words import Word, eval_word_tables


@dataclass
class Distribution:
    """A probability vector over all subsets of the ambient's faces."""

    ambient: AmbientComplex
    vec: np.ndarray

    def __post_init__(self):
        if self.ambient.num_faces > TABLE_LIMIT:
            raise ValueError("ambient too large for exact distributions")
        size = 1 << self.ambient.num_faces
        self.vec = np.asarray(self.vec, dtype=np.float64)
        if self.vec.shape != (size,):
            raise ValueError(f"expected vector of length {size}")

    @property
    def total(self) -> float:
        return float(self.vec.sum())

    def prob(self, mask: int) -> float:
        return float(self.vec[mask])

    def support(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.vec)]

    def probability_that(self, predicate) -> float:
        """Total mass of masks satisfying a python predicate."""
        return float(
            sum(self.vec[m] for m in range(self.vec.size) if predicate(int(m)))
        )


def point_mass(amb: AmbientComplex, mask: int) -> Distribution:
    vec = np.zeros(1 << amb.num_faces)
    vec[mask] = 1.0
    return Distribution(amb, vec)


def uniform_distribution(amb: AmbientComplex) -> Distribution:
    size = 1 << amb.num_faces
    return Distribution(amb, np.full(size, 1.0 / size))


def random_exact(amb: AmbientComplex, rng: np.random.Generator) -> Distribution:
    vec = rng.random(1 << amb.num_faces)
    return Distribution(amb, vec / vec.sum())


def hypergraph_product(amb: AmbientComplex, p) -> Distribution:
    """The independent-faces law as an exact vector.

    Bit i of the mask index is face i, so the vector doubles once per face.
    """
    probs = resolve_probabilities(amb, p)
    vec = np.ones(1)
    for q in probs:
        vec = np.concatenate([vec * (1.0 - q), vec * q])
    return Distribution(amb, vec)


def complex_product(amb: AmbientComplex, p) -> Distribution:
    """The staged law: mass on downward-closed masks, zero elsewhere."""
    probs = resolve_probabilities(amb, p)
    size = 1 << amb.num_faces
    vec = np.zeros(size)
    for mask in range(size):
        if amb.is_complex_mask(mask):
            vec[mask] = pmf_complex(amb, probs, mask)
    return Distribution(amb, vec)


def empirical_distribution(amb: AmbientComplex, masks: np.ndarray) -> Distribution:
    vec = np.bincount(
        np.asarray(masks, dtype=np.int64), minlength=1 << amb.num_faces
    ).astype(np.float64)
    return Distribution(amb, vec / len(masks))


def total_variation(a: Distribution, b: Distribution) -> float:
    if a.ambient is not b.ambient:
        raise ValueError("distributions live on different ambients")
    return float(np.abs(a.vec - b.vec).sum() / 2.0)


# ----- pushforwards ------------------------------------------------------------


def push_table(dist: Distribution, table: np.ndarray) -> Distribution:
    vec = np.bincount(
        table.astype(np.int64), weights=dist.vec, minlength=dist.vec.size
    )
    return Distribution(dist.ambient, vec)


def push_word(word: Word, *dists: Distribution) -> Distribution:
    """Push the independent coupling of the operands through a word."""
    if not dists:
        raise ValueError("need at least one distribution")
    amb = dists[0].ambient
    for d in dists[1:]:
        if d.ambient is not amb:
            raise ValueError("distributions live on different ambients")
    if word.arity() != len(dists):
        raise ValueError(
            f"word has arity {word.arity()}, got {len(dists)} distributions"
        )
    size = dists[0].vec.size
    if len(dists) == 1:
        idx = eval_word_tables(word, amb, [np.arange(size, dtype=np.uint32)])
        return push_table(dists[0], idx)
    if len(dists) == 2:
        rows = np.arange(size, dtype=np.uint32)[:, None]
        cols = np.arange(size, dtype=np.uint32)[None, :]
        idx = eval_word_tables(word, amb, [rows, cols])
        weights = np.outer(dists[0].vec, dists[1].vec)
        vec = np.bincount(
            idx.ravel().astype(np.int64), weights=weights.ravel(), minlength=size
        )
        return Distribution(amb, vec)
    raise ValueError("pushforwards support arity 1 and 2")


def _push_pairwise(a: Distribution, b: Distribution, op) -> Distribution:
    # Row chunks keep the pair matrix bounded regardless of lattice size.
    size = a.vec.size
    cols = np.arange(size, dtype=np.uint32)
    vec = np.zeros(size, dtype=np.float64)
    chunk = max(1, (1 << 22) // size)
    for start in range(0, size, chunk):
        rows = np.arange(start, min(start + chunk, size), dtype=np.uint32)
        idx = op(rows[:, None], cols[None, :])
        vec += np.bincount(
            idx.ravel().astype(np.int64),
            weights=np.outer(a.vec[start : start + chunk], b.vec).ravel(),
            minlength=size,
        )
    return Distribution(a.ambient, vec)


def push_union(a: Distribution, b: Distribution) -> Distribution:
    return _push_pairwise(a, b, np.bitwise_or)


def push_intersection(a: Distribution, b: Distribution) -> Distribution:
    return _push_pairwise(a, b, np.bitwise_and)


# ----- closed-form transforms ---------------------------------------------------


def complement_transform(amb: AmbientComplex, p) -> np.ndarray:
    return 1.0 - resolve_probabilities(amb, p)


def closure_transform(amb: AmbientComplex, p) -> np.ndarray:
    """Per-face inclusion probabilities of the closure of a product draw."""
    probs = resolve_probabilities(amb, p)
    out = np.empty_like(probs)
    for i in range(amb.num_faces):
        miss = 1.0
        for j in iter_bits(amb.sup_masks[i]):
            miss *= 1.0 - probs[j]
        out[i] = 1.0 - miss
    return out


def interior_transform(amb: AmbientComplex, p) -> np.ndarray:
    """Per-face inclusion probabilities of the interior-complex of a product draw."""
    probs = resolve_probabilities(amb, p)
    out = np.empty_like(probs)
    for i in range(amb.num_faces):
        keep = 1.0
        for j in iter_bits(amb.sub_masks[i]):
            keep *= probs[j]
        out[i] = keep
    return out


def union_transform(amb: AmbientComplex, p1, p2) -> np.ndarray:
    a = resolve_probabilities(amb, p1)
    b = resolve_probabilities(amb, p2)
    return 1.0 - (1.0 - a) * (1.0 - b)


def intersection_transform(amb: AmbientComplex, p1, p2) -> np.ndarray:
    a = resolve_probabilities(amb, p1)
    b = resolve_probabilities(amb, p2)
    return a * b


def marginals(dist: Distribution) -> np.ndarray:
    """Per-face inclusion probabilities of a distribution."""
    amb = dist.ambient
    out = np.empty(amb.num_faces)
    idx = np.arange(dist.vec.size, dtype=np.uint32)
    for i in range(amb.num_faces):
        out[i] = dist.vec[(idx >> np.uint32(i)) & np.uint32(1) == 1].sum()
    return out


def support_is_complexes(dist: Distribution, tol: float = 0.0) -> bool:
    """True iff all mass (above tol per point) sits on downward-closed sets."""
    amb = dist.ambient
    return all(
        amb.is_complex_mask(m) for m in range(dist.vec.size) if dist.vec[m] > tol
    )


def verify_transforms(amb: AmbientComplex, p, p2=None) -> dict[str, float]:
    """TV between each of the five pushforwards and its closed-form family.

    complement: complement of a product draw against the flipped product.
    closure / interior: brute-force pushforward against the staged complex
    law under the transformed probabilities.  These two comparisons hold
    only for degenerate assignments; the per-face marginals always agree
    (see marginal_gaps), but the joint law of a closed-up product draw is
    not a staged law in general, so nonzero values here are expected.
    intersection / union: two independent product draws combined, against
    the product law with pointwise-multiplied / complement-multiplied
    probabilities.
    """
    if p2 is None:
        p2 = p
    vec1 = resolve_probabilities(amb, p)
    vec2 = resolve_probabilities(amb, p2)
    base1 = hypergraph_product(amb, vec1)
    base2 = hypergraph_product(amb, vec2)
    out = {}
    out["complement"] = total_variation(
        push_table(base1, complement_table(amb)),
        hypergraph_product(amb, 1.0 - vec1),
    )
    out["closure"] = total_variation(
        push_table(base1, closure_table(amb)),
        complex_product(amb, closure_transform(amb, vec1)),
    )
    out["interior"] = total_variation(
        push_table(base1, interior_complex_table(amb)),
        complex_product(amb, interior_transform(amb, vec1)),
    )
    out["intersection"] = total_variation(
        push_intersection(base1, base2),
        hypergraph_product(amb, vec1 * vec2),
    )
    out["union"] = total_variation(
        push_union(base1, base2),
        hypergraph_product(amb, 1.0 - (1.0 - vec1) * (1.0 - vec2)),
    )
    return out


def marginal_gaps(amb: AmbientComplex, p) -> dict[str, float]:
    """Max abs gap between pushforward marginals and the derived vectors.

    P[t in closure] = p'(t) and P[t in interior-complex] = p''(t) hold
    exactly, so both entries vanish to rounding for every assignment.
    """
    vec = resolve_probabilities(amb, p)
    base = hypergraph_product(amb, vec)
    closed = push_table(base, closure_table(amb))
    inner = push_table(base, interior_complex_table(amb))
    return {
        "closure": float(
            np.abs(marginals(closed) - closure_transform(amb, vec)).max()
        ),
        "interior": float(
            np.abs(marginals(inner) - interior_transform(amb, vec)).max()
        ),
    }


# ----- iterated extension / interior of distributions ----------------------------


def push_extension_power(dist: Distribution, k: int) -> Distribution:
    table = extension_table(dist.ambient)
    out = dist
    for _ in range(k):
        out = push_table(out, table)
    return out


def push_interior_power(dist: Distribution, k: int) -> Distribution:
    table = interior_table(dist.ambient)
    out = dist
    for _ in range(k):
        out = push_table(out, table)
    return out


def extension_limit(dist: Distribution) -> Distribution:
    """Saturation value of the extension chain: mass f(empty) stays at the
    empty hypergraph, everything else ends at the whole complex."""
    amb = dist.ambient
    p_empty = dist.prob(0)
    vec = np.zeros_like(dist.vec)
    vec[0] = p_empty
    vec[amb.full_mask] = 1.0 - p_empty
    return Distribution(amb, vec)


def interior_limit(dist: Distribution) -> Distribution:
    """Saturation value of the interior chain: mass f(L) stays at the whole
    complex, everything else ends empty."""
    amb = dist.ambient
    p_full = dist.prob(amb.full_mask)
    vec = np.zeros_like(dist.vec)
    vec[amb.full_mask] = p_full
    vec[0] = 1.0 - p_full
    return Distribution(amb, vec)


def vertex_support_mass(dist: Distribution) -> float:
    """Mass of hypergraphs whose vertex set is contained in their edges.

    This is the lower bound for the probability that the closure of a draw
    is recovered by interior-after-extension.
    """
    amb = dist.ambient
    return dist.probability_that(
        lambda m: amb.vertex_faces_mask(m) & ~m == 0
    )


def containment_probabilities(dist: Distribution, k: int) -> dict:
    """Containment report over a distribution's support.

    Checks, for every H with positive mass:

        Ext^(k-1)(gamma H)  is contained in  gamma Int^k(H)
        gamma Int^k(H)      is contained in  Ext^(k+1)(gamma H)
        Ext(Int(H))         is contained in  delta H

    The middle one carries the complement on the interior side; dropping it
    fails at H = L.  The first two hold for every H; the third holds only
    when H is a complex, so containments_hold is False for any distribution
    with mass on a non-closed mask (witness on the full 1-simplex:
    H = {{1},{12}} has Ext(Int(H)) = L but simplicial part {{1}}).
    Alongside them, the mass of H with closure(H) recovered by
    interior-after-extension, and its lower bound: the mass of H whose
    vertices are all 0-dimensional hyperedges.
    """
    if k < 1:
        raise ValueError("containment report needs k >= 1")
    amb = dist.ambient
    violations = 0
    checked = 0
    for h in dist.support():
        gh = complement_mask(amb, h)
        int_k = h
        for _ in range(k):
            int_k = interior_mask(amb, int_k)
        g_int_k = complement_mask(amb, int_k)
        ext_low = gh
        for _ in range(k - 1):
            ext_low = extension_mask(amb, ext_low)
        ext_high = extension_mask(amb, extension_mask(amb, ext_low))
        ext_int = extension_mask(amb, interior_mask(amb, h))
        ok = (
            ext_low & ~g_int_k == 0
            and g_int_k & ~ext_high == 0
            and ext_int & ~interior_complex_mask(amb, h) == 0
        )
        checked += 1
        if not ok:
            violations += 1
    recovered = dist.probability_that(
        lambda m: closure_mask(amb, m) & ~interior_mask(amb, extension_mask(amb, m)) == 0
    )
    bound = vertex_support_mass(dist)
    return {
        "k": k,
        "support_size": checked,
        "containment_violations": violations,
        "containments_hold": violations == 0,
        "prob_closure_recovered": recovered,
        "lower_bound": bound,
        "inequality_holds": recovered >= bound - 1e-12,
    }


def restrict_distribution(dist: Distribution, sub: AmbientComplex) -> Distribution:
    """Pushforward under intersecting with a sub-ambient's face set.

    Every face of ``sub`` must be a face of the source ambient (matched by
    vertex ids); the result lives on ``sub``.
    """
    amb = dist.ambient
    src_idx = [amb.face_index(sub.face_vertices(i)) for i in range(sub.num_faces)]
    vec = np.zeros(1 << sub.num_faces)
    for mask in range(dist.vec.size):
        w = dist.vec[mask]
        if w == 0.0:
            continue
        small = 0
        for b, i in enumerate(src_idx):
            if mask >> i & 1:
                small |= 1 << b
        vec[small] += w
    return Distribution(sub, vec)


# ----- union resampler ------------------------------------------------------------


def complex_union_resample(
    k1: Complex, k2: Complex, p1, p2, rng: np.random.Generator
) -> Complex:
    """Rebuild a union-law draw from two independent staged draws.

    k1 and k2 must come from the staged model with closure-marginal vectors
    p1 and p2.  Starting from their union, each stage-d candidate (an
    external face s of the evolving complex) is settled by the coins that
    are already determined: if s was external to both inputs, both coins
    came up tails and s stays out; if s was external to exactly one, the
    other coin is undetermined and a fresh draw with that side's probability
    decides; if s was external to neither, a fresh draw with the combined
    probability 1 - (1-p1)(1-p2) decides.  The result has the law of the
    staged model with the combined probabilities.
    """
    amb = k1.ambient
    if k2.ambient is not amb:
        raise ValueError("inputs live on different ambients")
    q1 = resolve_probabilities(amb, p1)
    q2 = resolve_probabilities(amb, p2)
    mask = k1.mask | k2.mask
    ext1 = external_faces_mask(amb, k1.mask)
    ext2 = external_faces_mask(amb, k2.mask)
    for d in range(1, amb.dim + 1):
        for i in iter_bits(amb.faces_by_dim(d)):
            if mask >> i & 1:
                continue
            if amb.boundary_masks[i] & ~mask:
                continue
            in1 = ext1 >> i & 1
            in2 = ext2 >> i & 1
            if in1 and in2:
                continue
            if in1:
                accept = rng.random() < q2[i]
            elif in2:
                accept = rng.random() < q1[i]
            else:
                accept = rng.random() < 1.0 - (1.0 - q1[i]) * (1.0 - q2[i])
            if accept:
                mask |= 1 << i
    return Complex(amb, mask)
