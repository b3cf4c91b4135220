"""Random sub-hypergraphs and random sub-complexes of an ambient complex.

Two laws on subsets of the ambient's faces, each driven by a probability
per face:

* hypergraph model: every face is an independent Bernoulli draw, giving
  mass prod_{in} p * prod_{out} (1 - p) to each face subset.
* complex model: faces are examined in ascending dimension and a face is
  eligible only once its whole boundary is present, giving mass
  prod_{faces} p * prod_{external faces} (1 - p) to each downward-closed
  subset.  External faces are the missing faces whose boundary is present.

Sampling is reproducible: a (seed, stream) pair pins the generator, and
draws consume uniforms in canonical face order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .complexes import AmbientComplex, Hypergraph, Complex, iter_bits
from .operators import external_faces_mask


def rng_from(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator so independent streams never overlap."""
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


@dataclass(frozen=True)
class ProbabilityAssignment:
    """A probability for every face, per dimension or per simplex.

    per-dim mode: entry d of ``per_dim`` applies to all d-faces; ambients of
    larger dimension are rejected at resolve time.
    per-simplex mode: explicit entries, anything unlisted gets ``default``.
    """

    per_dim: tuple[float, ...] | None = None
    entries: tuple[tuple[tuple[int, ...], float], ...] | None = None
    default: float = 0.0

    def __post_init__(self):
        if (self.per_dim is None) == (self.entries is None):
            raise ValueError("exactly one of per_dim / entries must be given")
        for p in self._all_values():
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability {p} outside [0, 1]")

    def _all_values(self) -> Iterator[float]:
        if self.per_dim is not None:
            yield from self.per_dim
        else:
            yield self.default
            for _, p in self.entries:
                yield p

    @classmethod
    def constant(cls, p: float) -> "ProbabilityAssignment":
        # Constant assignments are dimension-blind; 64 entries outruns any
        # ambient the exact code can hold.
        return cls(per_dim=tuple([p] * 64))

    @classmethod
    def from_dims(cls, ps: Iterable[float]) -> "ProbabilityAssignment":
        return cls(per_dim=tuple(ps))

    @classmethod
    def from_entries(
        cls, entries: Iterable[tuple[Iterable[int], float]], default: float = 0.0
    ) -> "ProbabilityAssignment":
        frozen = tuple(
            (tuple(sorted(set(face))), float(p)) for face, p in entries
        )
        return cls(entries=frozen, default=default)

    def resolve(self, amb: AmbientComplex) -> np.ndarray:
        """Vector of probabilities in the ambient's canonical face order."""
        out = np.empty(amb.num_faces, dtype=np.float64)
        if self.per_dim is not None:
            if amb.dim >= len(self.per_dim):
                raise ValueError(
                    f"ambient has dimension {amb.dim}; assignment stops at "
                    f"{len(self.per_dim) - 1}"
                )
            for i, d in enumerate(amb.dims):
                out[i] = self.per_dim[d]
            return out
        out[:] = self.default
        lookup = {face: p for face, p in self.entries}
        all_faces = {amb.face_vertices(i) for i in range(amb.num_faces)}
        for face in lookup:
            # Unknown faces are an error: a per-simplex table is tied to one
            # ambient and a typo should not silently become ``default``.
            if face not in all_faces:
                raise ValueError(f"{face} is not a face of the ambient")
        for i in range(amb.num_faces):
            out[i] = lookup.get(amb.face_vertices(i), self.default)
        return out

    # JSON wire format (used by the CLI):
    #   {"mode": "per-dim", "p": [1.0, 0.5]}
    #   {"mode": "per-simplex", "default": 0.0,
    #    "entries": [{"simplex": [1, 2], "p": 0.4}]}

    def to_json(self) -> str:
        if self.per_dim is not None:
            doc = {"mode": "per-dim", "p": list(self.per_dim)}
        else:
            doc = {
                "mode": "per-simplex",
                "default": self.default,
                "entries": [
                    {"simplex": list(face), "p": p} for face, p in self.entries
                ],
            }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ProbabilityAssignment":
        doc = json.loads(text)
        mode = doc.get("mode")
        if mode == "per-dim":
            return cls(per_dim=tuple(float(x) for x in doc["p"]))
        if mode == "per-simplex":
            entries = tuple(
                (tuple(sorted(set(e["simplex"]))), float(e["p"]))
                for e in doc["entries"]
            )
            return cls(entries=entries, default=float(doc.get("default", 0.0)))
        raise ValueError(f"unknown probability mode {mode!r}")


def resolve_probabilities(amb: AmbientComplex, p) -> np.ndarray:
    if isinstance(p, ProbabilityAssignment):
        return p.resolve(amb)
    vec = np.asarray(p, dtype=np.float64)
    if vec.shape != (amb.num_faces,):
        raise ValueError(f"expected {amb.num_faces} probabilities, got {vec.shape}")
    if (vec < 0).any() or (vec > 1).any():
        raise ValueError("probability outside [0, 1]")
    return vec


# ----- hypergraph model --------------------------------------------------------


def sample_hypergraph(amb: AmbientComplex, p, rng: np.random.Generator) -> Hypergraph:
    """One draw: each face kept independently with its own probability."""
    probs = resolve_probabilities(amb, p)
    us = rng.random(amb.num_faces)
    mask = 0
    for i in range(amb.num_faces):
        if us[i] < probs[i]:
            mask |= 1 << i
    return Hypergraph(amb, mask)


def pmf_hypergraph(amb: AmbientComplex, p, mask: int) -> float:
    probs = resolve_probabilities(amb, p)
    out = 1.0
    for i in range(amb.num_faces):
        out *= probs[i] if mask >> i & 1 else 1.0 - probs[i]
    return out


# ----- complex model -----------------------------------------------------------


def sample_complex(amb: AmbientComplex, p, rng: np.random.Generator) -> Complex:
    """One draw of the staged model.

    Vertices are drawn first; at each later stage the candidates are the
    ambient faces whose boundary was already kept, visited in canonical
    order.  Exactly one uniform is consumed per eligible candidate.
    """
    probs = resolve_probabilities(amb, p)
    mask = 0
    for d in range(amb.dim + 1):
        layer = amb.faces_by_dim(d)
        for i in iter_bits(layer):
            if amb.boundary_masks[i] & ~mask:
                continue
            if rng.random() < probs[i]:
                mask |= 1 << i
    return Complex(amb, mask)


def pmf_complex(amb: AmbientComplex, p, mask: int) -> float:
    """Mass of a downward-closed face set: present faces times absent
    external faces."""
    if not amb.is_complex_mask(mask):
        raise ValueError("pmf_complex is defined on complexes only")
    probs = resolve_probabilities(amb, p)
    out = 1.0
    for i in iter_bits(mask):
        out *= probs[i]
    for i in iter_bits(external_faces_mask(amb, mask)):
        out *= 1.0 - probs[i]
    return out


def sample_hypergraph_batch(
    amb: AmbientComplex, p, rng: np.random.Generator, n: int
) -> np.ndarray:
    """n independent hypergraph draws as a uint32 mask array."""
    if amb.num_faces > 32:
        raise ValueError("batched sampling supports at most 32 faces")
    probs = resolve_probabilities(amb, p)
    us = rng.random((n, amb.num_faces))
    bits = (us < probs).astype(np.uint32)
    return (bits << np.arange(amb.num_faces, dtype=np.uint32)).sum(
        axis=1, dtype=np.uint32
    )


def sample_complex_batch(
    amb: AmbientComplex, p, rng: np.random.Generator, n: int
) -> np.ndarray:
    """n independent staged draws as a uint32 mask array.

    Consumes n uniforms per face whether or not the face is eligible in a
    given sample, so the stream layout differs from n calls to
    sample_complex; the law is the same.
    """
    if amb.num_faces > 32:
        raise ValueError("batched sampling supports at most 32 faces")
    probs = resolve_probabilities(amb, p)
    masks = np.zeros(n, dtype=np.uint32)
    for d in range(amb.dim + 1):
        for i in iter_bits(amb.faces_by_dim(d)):
            bnd = np.uint32(amb.boundary_masks[i])
            eligible = (masks & bnd) == bnd
            keep = eligible & (rng.random(n) < probs[i])
            masks |= keep.astype(np.uint32) << np.uint32(i)
    return masks


# ----- enumeration -------------------------------------------------------------

ENUMERATION_LIMIT = 20


def enumerate_subhypergraphs(amb: AmbientComplex) -> Iterator[int]:
    """Every subset of the ambient's faces, as masks in increasing order."""
    if amb.num_faces > ENUMERATION_LIMIT:
        raise ValueError(f"too many faces to enumerate ({amb.num_faces})")
    yield from range(1 << amb.num_faces)


def enumerate_subcomplexes(amb: AmbientComplex) -> Iterator[int]:
    """Every downward-closed subset, built by dimension stages."""
    if amb.num_faces > ENUMERATION_LIMIT:
        raise ValueError(f"too many faces to enumerate ({amb.num_faces})")
    partial = [0]
    for d in range(amb.dim + 1):
        layer = list(iter_bits(amb.faces_by_dim(d)))
        grown = []
        for base in partial:
            ok = [i for i in layer if amb.boundary_masks[i] & ~base == 0]
            for pick in range(1 << len(ok)):
                add = 0
                for b, i in enumerate(ok):
                    if pick >> b & 1:
                        add |= 1 << i
                grown.append(base | add)
        partial = grown
    yield from sorted(set(partial))
