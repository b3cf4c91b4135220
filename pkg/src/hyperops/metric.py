"""Paths, distance and diameter on a complex, and the minimal power indices.

A path is a sequence of faces in which consecutive faces share a vertex; its
length is the number of faces, so a face is at distance 1 from itself and
adjacent faces are at distance 2.  The diameter is the maximum distance over
face pairs.

Iterating extension saturates an arbitrary sub-hypergraph to the whole
complex; iterating interior erodes it to nothing.  `minimal_powers` reports
the first interior power that is empty (t) and the first extension power of
the complement that is everything (r).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complexes import AmbientComplex, Hypergraph, iter_bits
from .operators import (
    closure_mask,
    complement_mask,
    extension_mask,
    interior_mask,
)


def distance(amb: AmbientComplex, i: int, j: int) -> int:
    """Least number of faces in a path from face i to face j (inf -> -1)."""
    if i == j:
        return 1
    seen = 1 << i
    frontier = [i]
    steps = 1
    while frontier:
        steps += 1
        nxt = []
        for a in frontier:
            reach = amb.meet_masks[a] & ~seen
            if reach >> j & 1:
                return steps
            seen |= reach
            nxt.extend(iter_bits(reach))
        frontier = nxt
    return -1


def eccentricity(amb: AmbientComplex, i: int) -> int:
    # Single-source BFS over the face meets-graph; level k holds faces at
    # distance k+1 from i.
    seen = 1 << i
    frontier = 1 << i
    ecc = 1
    while True:
        reach = 0
        for a in iter_bits(frontier):
            reach |= amb.meet_masks[a]
        reach &= ~seen
        if not reach:
            break
        seen |= reach
        frontier = reach
        ecc += 1
    if seen != amb.full_mask:
        return -1
    return ecc


def diameter(amb: AmbientComplex) -> int:
    """Maximum pairwise distance; -1 if the complex is disconnected."""
    best = 1
    for i in range(amb.num_faces):
        e = eccentricity(amb, i)
        if e < 0:
            return -1
        best = max(best, e)
    return best


def hop_diameter_maximal(amb: AmbientComplex) -> int:
    """Edge-count diameter of the meets-graph restricted to maximal faces."""
    maxima = list(iter_bits(amb.maximal_mask))
    best = 0
    for i in maxima:
        dist = {i: 0}
        q = deque([i])
        while q:
            a = q.popleft()
            for b in maxima:
                if b not in dist and amb.meet_masks[a] >> b & 1:
                    dist[b] = dist[a] + 1
                    q.append(b)
        if len(dist) != len(maxima):
            return -1
        best = max(best, max(dist.values()))
    return best


# ----- iterated extension and interior ----------------------------------------


def extension_power_mask(amb: AmbientComplex, h: int, k: int) -> int:
    out = h
    for _ in range(k):
        out = extension_mask(amb, out)
    return out


def interior_power_mask(amb: AmbientComplex, h: int, k: int) -> int:
    out = h
    for _ in range(k):
        out = interior_mask(amb, out)
    return out


def extension_power_by_paths(amb: AmbientComplex, h: int, k: int) -> int:
    """Ext^k via reachability: faces joined to h by a broad path of length <= k+1.

    A broad path consists of maximal faces only.  S_1 holds the maximal faces
    containing an edge of h; each further step adds maximal faces meeting the
    previous layer; the result is the closure of S_k.  Agrees with iterating
    the operator, and serves as an independent route in tests.
    """
    if k <= 0:
        return h
    layer = 0
    for i in iter_bits(amb.maximal_mask):
        if amb.sub_masks[i] & h:
            layer |= 1 << i
    for _ in range(k - 1):
        grown = layer
        for i in iter_bits(amb.maximal_mask):
            if amb.meet_masks[i] & layer:
                grown |= 1 << i
        layer = grown
    return closure_mask(amb, layer)


def interior_power_by_paths(amb: AmbientComplex, h: int, k: int) -> int:
    """Int^k via distance: drop every face within distance k+1 of the complement."""
    if k <= 0:
        return h
    ball = complement_mask(amb, h)
    for _ in range(k):
        grown = ball
        for i in range(amb.num_faces):
            if amb.meet_masks[i] & ball:
                grown |= 1 << i
        ball = grown
    return complement_mask(amb, ball)


@dataclass(frozen=True)
class PowerIndices:
    """Minimal saturation exponents of a sub-hypergraph.

    t: least k with Int^k(H) empty.
    r: least k with Ext^k(complement of H) the whole complex.
    degenerate: H was empty or everything, where both indices are 0 by
    convention and the t/r comparison theorems do not apply.
    """

    t: int
    r: int
    degenerate: bool = False


def minimal_powers(h: Hypergraph) -> PowerIndices:
    amb = h.ambient
    if h.mask == 0 or h.mask == amb.full_mask:
        return PowerIndices(0, 0, degenerate=True)
    bound = amb.num_faces + 1
    t = None
    cur = h.mask
    for k in range(bound + 1):
        if cur == 0:
            t = k
            break
        nxt = interior_mask(amb, cur)
        if nxt == cur:
            raise ValueError("interior iteration stalled; is the complex connected?")
        cur = nxt
    r = None
    cur = complement_mask(amb, h.mask)
    for k in range(bound + 1):
        if cur == amb.full_mask:
            r = k
            break
        nxt = extension_mask(amb, cur)
        if nxt == cur:
            raise ValueError("extension iteration stalled; is the complex connected?")
        cur = nxt
    assert t is not None and r is not None
    return PowerIndices(t, r)


# ----- triangulated triangle fixture -------------------------------------------


def triangle_vertex_id(m: int, i: int, j: int) -> int:
    """Vertex id of lattice point (i, j), 0 <= i, j and i + j <= m."""
    if i < 0 or j < 0 or i + j > m:
        raise ValueError(f"({i}, {j}) is outside the triangle of side {m}")
    return i * (m + 1) + j


def triangle_vertex_coords(m: int, vid: int) -> tuple[int, int]:
    i, j = divmod(vid, m + 1)
    if i < 0 or j < 0 or i + j > m:
        raise ValueError(f"{vid} is not a vertex id for side {m}")
    return i, j


def triangulated_triangle(m: int) -> AmbientComplex:
    """Equilateral triangle of side m cut into m*m unit triangles.

    Vertices are lattice points (i, j) with i + j <= m, numbered
    i * (m + 1) + j.  Upward cells {(i,j), (i+1,j), (i,j+1)} exist for
    i + j < m, downward cells {(i+1,j), (i,j+1), (i+1,j+1)} for i + j < m - 1.
    """
    if m < 1:
        raise ValueError("side must be at least 1")
    vid = lambda i, j: triangle_vertex_id(m, i, j)
    faces = []
    for i in range(m + 1):
        for j in range(m + 1 - i):
            if i + j <= m - 1:
                faces.append((vid(i, j), vid(i + 1, j), vid(i, j + 1)))
            if i + j <= m - 2:
                faces.append((vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)))
    return AmbientComplex(faces)


def _subtriangle_mask(amb: AmbientComplex, m: int, i0: int, j0: int, side: int) -> int:
    # Closed subcomplex on lattice points of the upward subtriangle with
    # corner (i0, j0) and the given side.
    inside = set()
    for di in range(side + 1):
        for dj in range(side + 1 - di):
            inside.add(triangle_vertex_id(m, i0 + di, j0 + dj))
    out = 0
    for idx in range(amb.num_faces):
        if set(amb.face_vertices(idx)) <= inside:
            out |= 1 << idx
    return out


def figure_hypergraphs(m: int = 6) -> tuple[AmbientComplex, Hypergraph, Hypergraph, Hypergraph]:
    """The side-6 triangle with its three reference sub-hypergraphs.

    h1: closed side-2 subtriangle at corner (1, 2).
    h2: closed side-3 subtriangle at corner (1, 1).
    h3: h2 with its own perimeter vertices and edges removed; keeps all nine
        cells, the interior edges and the single interior vertex, and is not
        downward closed.
    """
    if m < 5:
        raise ValueError("the reference figure needs side at least 5")
    amb = triangulated_triangle(m)
    h1 = _subtriangle_mask(amb, m, 1, 2, 2)
    h2 = _subtriangle_mask(amb, m, 1, 1, 3)

    # Perimeter of the side-3 subtriangle: the lines i = 1, j = 1 and
    # i + j = 5 within it.
    corner_i, corner_j, side = 1, 1, 3
    on_lines = []
    for idx in range(amb.num_faces):
        verts = amb.face_vertices(idx)
        if not (h2 >> idx & 1):
            continue
        coords = [triangle_vertex_coords(m, v) for v in verts]
        if len(coords) > 2:
            continue
        for line in (
            lambda i, j: i == corner_i,
            lambda i, j: j == corner_j,
            lambda i, j: i + j == corner_i + corner_j + side,
        ):
            if all(line(i, j) for i, j in coords):
                on_lines.append(idx)
                break
    h3 = h2
    for idx in on_lines:
        h3 &= ~(1 << idx)
    return amb, Hypergraph(amb, h1), Hypergraph(amb, h2), Hypergraph(amb, h3)
