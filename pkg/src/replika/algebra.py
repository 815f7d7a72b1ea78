"""Structure-constant algebras: the path algebra, its dual bimodule, and the
m-replicated algebra.

The replicated algebra has basis

    (p, q)   for p a path of Q and layer q in 0..m       ("path" kind)
    (p*, r)  for p a path of Q and layer r in 1..m       ("dual-path" kind)

Layer 0 carries the hereditary copy: the layer-0 projectives are the
projectives of kQ, cosyzygies climb to higher layers, and the fat
projective-injectives are the P_(i,q) with q >= 1 (dimension = #paths from i
plus #paths to i).  Dual-path elements multiply to zero.

Products of basis elements are single basis elements or zero, so the
structure-constant table stores one index per pair.  The algebra object is
field-free; modules carry the prime.

Vertex (i, q) has flat index q*n + (i-1).  A dual element (p*, r) runs from
vertex (target p, r) to vertex (source p, r-1): the bimodule rules are

    u . p* = w*  when p = w.u      p* . v = w*  when p = v.w
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ReplikaError
from .quiver import Path, Quiver


@dataclass(frozen=True)
class BasisElt:
    kind: str  # "p" (path) or "d" (dual-path)
    path: int  # index into quiver.paths()
    layer: int

    def __post_init__(self):
        if self.kind == "d" and self.layer < 1:
            raise ReplikaError("dual-path elements require layer >= 1")


def _strip_suffix(quiver: Quiver, phi: Path, p: Path) -> Optional[Path]:
    """w with phi = w.p, or None."""
    lp = len(p.arrows)
    if lp == 0:
        return phi if quiver.path_target(phi) == p.source else None
    if lp > len(phi.arrows) or phi.arrows[-lp:] != p.arrows:
        return None
    w = Path(phi.source, phi.arrows[:-lp])
    return w if quiver.path_target(w) == p.source else None


def _strip_prefix(quiver: Quiver, phi: Path, p: Path) -> Optional[Path]:
    """w with phi = p.w, or None."""
    lp = len(p.arrows)
    if lp == 0:
        return phi if phi.source == p.source else None
    if phi.source != p.source or lp > len(phi.arrows) or phi.arrows[:lp] != p.arrows:
        return None
    return Path(quiver.path_target(p), phi.arrows[lp:])


def dual_action(quiver: Quiver, u: Path, p: Path, v: Path) -> Optional[Path]:
    """u . p* . v in the dual basis: the path w with p = v.w.u, else None."""
    w1 = _strip_suffix(quiver, p, u)
    if w1 is None:
        return None
    return _strip_prefix(quiver, w1, v)


class SCAlgebra:
    """Finite-dimensional algebra with a fixed basis and 0/1 structure constants."""

    def __init__(self, quiver, m, basis, mult, left_vertex, right_vertex,
                 idempotent_index, n_vertices, generator_indices, name,
                 is_opposite=False):
        self.quiver = quiver
        self.m = m
        self.basis = basis
        self.index = {b: i for i, b in enumerate(basis)}
        self.mult = mult
        self.left_vertex = left_vertex
        self.right_vertex = right_vertex
        self.idempotent_index = idempotent_index  # flat vertex -> basis index
        self.n_vertices = n_vertices
        self.generator_indices = generator_indices
        self.name = name
        self.is_opposite = is_opposite
        idset = set(idempotent_index)
        self.radical_indices = [i for i in range(len(basis)) if i not in idset]
        self._cache = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"SCAlgebra({self.name}, dim={self.dim}, vertices={self.n_vertices})"

    def flat_vertex(self, i: int, q: int) -> int:
        return q * self.quiver.n + (i - 1)

    def vertex_pair(self, flat: int):
        return flat % self.quiver.n + 1, flat // self.quiver.n

    def structure_constants(self, i: int, j: int):
        k = int(self.mult[i, j])
        return [(k, 1)] if k >= 0 else []

    def product(self, i: int, j: int) -> int:
        return int(self.mult[i, j])

    def layer_of(self, i: int) -> int:
        return self.basis[i].layer

    def basis_label(self, i: int) -> str:
        b = self.basis[i]
        q = self.quiver
        if q is None:
            return f"b{i}"
        path = q.paths()[b.path]
        word = "".join(q.arrows[a].label for a in path.arrows) or f"e{path.source}"
        star = "*" if b.kind == "d" else ""
        return f"{word}{star}@{b.layer}"

    def opposite(self) -> "SCAlgebra":
        """Same basis with reversed multiplication and swapped vertex roles."""
        key = "opposite"
        if key not in self._cache:
            self._cache[key] = SCAlgebra(
                quiver=self.quiver,
                m=self.m,
                basis=self.basis,
                mult=self.mult.T.copy(),
                left_vertex=self.right_vertex,
                right_vertex=self.left_vertex,
                idempotent_index=self.idempotent_index,
                n_vertices=self.n_vertices,
                generator_indices=self.generator_indices,
                name=self.name + "^op",
                is_opposite=not self.is_opposite,
            )
            self._cache[key]._cache["opposite"] = self
        return self._cache[key]


_replicated_cache = {}


def replicated_algebra(quiver: Quiver, m: int) -> SCAlgebra:
    """The m-replicated algebra of kQ (m = 0 gives kQ itself)."""
    if m < 0:
        raise ReplikaError("replication level must be >= 0")
    cache_key = (quiver.key, m)
    if cache_key in _replicated_cache:
        return _replicated_cache[cache_key]

    paths = quiver.paths()
    path_index = {p: i for i, p in enumerate(paths)}
    n = quiver.n

    basis = []
    for q in range(m + 1):
        basis.extend(BasisElt("p", i, q) for i in range(len(paths)))
    for r in range(1, m + 1):
        basis.extend(BasisElt("d", i, r) for i in range(len(paths)))
    index = {b: i for i, b in enumerate(basis)}

    nb = len(basis)
    left_vertex = np.zeros(nb, dtype=np.int64)
    right_vertex = np.zeros(nb, dtype=np.int64)
    for bi, b in enumerate(basis):
        path = paths[b.path]
        src, tgt = path.source, quiver.path_target(path)
        if b.kind == "p":
            left_vertex[bi] = b.layer * n + (src - 1)
            right_vertex[bi] = b.layer * n + (tgt - 1)
        else:
            left_vertex[bi] = b.layer * n + (tgt - 1)
            right_vertex[bi] = (b.layer - 1) * n + (src - 1)

    mult = np.full((nb, nb), -1, dtype=np.int32)
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            if int(right_vertex[i]) != int(left_vertex[j]):
                continue
            if bi.kind == "p" and bj.kind == "p":
                if bi.layer == bj.layer:
                    comp = quiver.compose(paths[bi.path], paths[bj.path])
                    if comp is not None:
                        mult[i, j] = index[BasisElt("p", path_index[comp], bi.layer)]
            elif bi.kind == "p" and bj.kind == "d":
                if bi.layer == bj.layer:
                    w = _strip_suffix(quiver, paths[bj.path], paths[bi.path])
                    if w is not None:
                        mult[i, j] = index[BasisElt("d", path_index[w], bj.layer)]
            elif bi.kind == "d" and bj.kind == "p":
                if bj.layer == bi.layer - 1:
                    w = _strip_prefix(quiver, paths[bi.path], paths[bj.path])
                    if w is not None:
                        mult[i, j] = index[BasisElt("d", path_index[w], bi.layer)]
            # dual . dual = 0

    idempotent_index = []
    for q in range(m + 1):
        for i in range(1, n + 1):
            idempotent_index.append(index[BasisElt("p", path_index[Path(i, ())], q)])

    generators = []
    for q in range(m + 1):
        for ai in range(len(quiver.arrows)):
            arrow_path = Path(quiver.arrows[ai].source, (ai,))
            generators.append(index[BasisElt("p", path_index[arrow_path], q)])
    maximal = quiver.maximal_paths()
    for r in range(1, m + 1):
        for p in maximal:
            generators.append(index[BasisElt("d", path_index[p], r)])

    alg = SCAlgebra(
        quiver=quiver,
        m=m,
        basis=basis,
        mult=mult,
        left_vertex=left_vertex,
        right_vertex=right_vertex,
        idempotent_index=idempotent_index,
        n_vertices=n * (m + 1),
        generator_indices=generators,
        name=f"{quiver.name}^({m})",
    )
    _replicated_cache[cache_key] = alg
    return alg


def hereditary_algebra(quiver: Quiver) -> SCAlgebra:
    return replicated_algebra(quiver, 0)


def enumerate_paths(quiver: Quiver):
    """Paths of Q including idempotents; the basis of kQ (errors on cycles)."""
    return quiver.paths()


def grothendieck_rank(alg: SCAlgebra) -> int:
    """Number of simple modules = number of vertex idempotents = n(m+1)."""
    return len(alg.idempotent_index)


def layer_map(small: SCAlgebra, big: SCAlgebra, offset: int) -> np.ndarray:
    """basis index map small -> big shifting every layer by offset."""
    if small.quiver is None or big.quiver is None or small.quiver.key != big.quiver.key:
        raise ReplikaError("layer_map requires algebras over the same quiver")
    out = np.zeros(small.dim, dtype=np.int64)
    for i, b in enumerate(small.basis):
        shifted = BasisElt(b.kind, b.path, b.layer + offset)
        if shifted not in big.index:
            raise ReplikaError("layer shift leaves the target algebra")
        out[i] = big.index[shifted]
    return out


@dataclass
class TruncationEmbedding:
    """A^(m) as a quotient of A^(m2), m2 > m, by top-layer idempotents."""

    source: SCAlgebra
    target: SCAlgebra
    basis_map: np.ndarray  # source basis index -> target basis index
    killed_vertices: list  # flat vertices of the target generating the kernel
    offset: int = 0


def truncation_embedding(alg: SCAlgebra, m2: int) -> TruncationEmbedding:
    """Return A^(m2) together with the idempotents presenting alg as a quotient.

    Every alg-module inflates to an A^(m2)-module by zero action on the
    killed layers.  m2 = m gives the identity embedding.
    """
    if m2 < alg.m:
        raise ReplikaError(f"target level {m2} below current level {alg.m}")
    big = replicated_algebra(alg.quiver, m2)
    killed = [big.flat_vertex(i, q)
              for q in range(alg.m + 1, m2 + 1)
              for i in range(1, alg.quiver.n + 1)]
    return TruncationEmbedding(alg, big, layer_map(alg, big, 0), killed, offset=0)


def window_embedding(alg: SCAlgebra, below: int, above: int) -> TruncationEmbedding:
    """Embed alg into a larger replicated algebra with `below` extra layers
    underneath (conceptual layers -below..-1) and `above` on top.

    This is the same truncation relabeled so that syzygy computations, which
    consume layers downward, have room; the offset records the relabeling.
    """
    if below < 0 or above < 0:
        raise ReplikaError("window margins must be >= 0")
    big = replicated_algebra(alg.quiver, alg.m + below + above)
    killed = []
    for q in list(range(0, below)) + list(range(alg.m + below + 1, alg.m + below + above + 1)):
        for i in range(1, alg.quiver.n + 1):
            killed.append(big.flat_vertex(i, q))
    return TruncationEmbedding(alg, big, layer_map(alg, big, below), killed, offset=below)
