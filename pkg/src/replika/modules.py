"""Right modules over a structure-constant algebra and their morphisms.

A module of dimension d stores one d x d action matrix per algebra basis
element; x.b = x @ act(b) on row vectors.  A morphism M -> N is a
d_M x d_N matrix F with act_M(b) @ F = F @ act_N(b) for every b; composition
is matrix product in diagram order.

Hom spaces are computed after grading the module by the vertex idempotents:
a morphism is block diagonal across vertex components and is determined by
its blocks, which must commute with the algebra generators.  This keeps the
linear systems at the size of the vertex components instead of d^2.
"""

from __future__ import annotations

import itertools
import json

import numpy as np

from .algebra import SCAlgebra, TruncationEmbedding
from .errors import ReplikaError
from .linalg import PrimeField, coords_in_rref, left_kernel, right_kernel, rref

_uid_counter = itertools.count()


class FDModule:
    def __init__(self, alg: SCAlgebra, field: PrimeField, acts, check=True):
        self.alg = alg
        self.field = field
        acts = np.asarray(acts, dtype=np.int64) % field.p
        if acts.ndim != 3 or acts.shape[0] != alg.dim or acts.shape[1] != acts.shape[2]:
            raise ReplikaError("action tensor must have shape (dim Lambda, d, d)")
        self.acts = acts
        self.dim = acts.shape[1]
        self.uid = next(_uid_counter)
        self._vertex = None
        self._blocks = None
        if check and self.dim:
            total = acts[alg.idempotent_index].sum(axis=0) % field.p
            if not (total == np.eye(self.dim, dtype=np.int64)).all():
                raise ReplikaError("vertex idempotents do not sum to the identity")

    def __repr__(self):
        return f"FDModule(dim={self.dim}, alg={self.alg.name}, p={self.field.p})"

    def act(self, i: int) -> np.ndarray:
        return self.acts[i]

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def validate(self) -> None:
        """Full multiplicativity check over every basis pair (test helper)."""
        p = self.field.p
        for i in range(self.alg.dim):
            ai = self.acts[i]
            prod = (ai @ self.acts.reshape(self.alg.dim, self.dim, self.dim)) % p
            for j in range(self.alg.dim):
                k = self.alg.product(i, j)
                expected = self.acts[k] if k >= 0 else 0
                if not (prod[j] == expected).all():
                    raise ReplikaError(
                        f"action not multiplicative at basis pair ({i}, {j})"
                    )

    def vertex_spaces(self):
        """Per flat vertex: (rref row basis of M.e_v, pivot columns)."""
        if self._vertex is None:
            p = self.field.p
            spaces = []
            for v in range(self.alg.n_vertices):
                e = self.acts[self.alg.idempotent_index[v]]
                r, piv = rref(e, p)
                spaces.append((r, piv))
            self._vertex = spaces
        return self._vertex

    @property
    def vertex_dims(self):
        return tuple(len(piv) for _, piv in self.vertex_spaces())

    def layer_support(self):
        n = self.alg.quiver.n
        dims = self.vertex_dims
        return sorted({v // n for v in range(self.alg.n_vertices) if dims[v]})

    def generator_blocks(self):
        """Per algebra generator g: the matrix of .g between vertex coordinates."""
        if self._blocks is None:
            spaces = self.vertex_spaces()
            p = self.field.p
            blocks = {}
            for g in self.alg.generator_indices:
                u = int(self.alg.left_vertex[g])
                v = int(self.alg.right_vertex[g])
                ru, _ = spaces[u]
                rv, pivv = spaces[v]
                blocks[g] = coords_in_rref(rv, pivv, (ru @ self.acts[g]) % p, p)
            self._blocks = blocks
        return self._blocks

    def vertex_embedding(self, v: int) -> np.ndarray:
        """d x m_v matrix sending x to the coordinates of x.e_v."""
        _, piv = self.vertex_spaces()[v]
        return self.acts[self.alg.idempotent_index[v]][:, piv]

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "algebra": self.alg.name,
            "p": self.field.p,
            "actions": {
                self.alg.basis_label(i): self.acts[i].tolist()
                for i in range(self.alg.dim)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def module_from_json(alg: SCAlgebra, data) -> FDModule:
    if isinstance(data, str):
        data = json.loads(data)
    field = PrimeField(data["p"])
    d = data["dim"]
    acts = np.zeros((alg.dim, d, d), dtype=np.int64)
    labels = {alg.basis_label(i): i for i in range(alg.dim)}
    for label, mat in data["actions"].items():
        if label not in labels:
            raise ReplikaError(f"unknown basis label {label!r}")
        acts[labels[label]] = np.asarray(mat, dtype=np.int64)
    mod = FDModule(alg, field, acts)
    mod.validate()
    return mod


class ModMorphism:
    def __init__(self, source: FDModule, target: FDModule, matrix, check=True):
        if source.alg is not target.alg:
            raise ReplikaError("morphism endpoints live over different algebras")
        if source.field != target.field:
            raise ReplikaError("morphism endpoints live over different fields")
        self.source = source
        self.target = target
        p = source.field.p
        m = np.asarray(matrix, dtype=np.int64) % p
        if m.shape != (source.dim, target.dim):
            raise ReplikaError(
                f"matrix shape {m.shape} does not match ({source.dim}, {target.dim})"
            )
        self.matrix = m
        if check:
            self._check_intertwines()

    def _check_intertwines(self):
        # generators + idempotents suffice: intertwining is multiplicative
        p = self.source.field.p
        for g in list(self.alg.idempotent_index) + list(self.alg.generator_indices):
            lhs = (self.source.acts[g] @ self.matrix) % p
            rhs = (self.matrix @ self.target.acts[g]) % p
            if not (lhs == rhs).all():
                raise ReplikaError("matrix does not intertwine the actions")

    @property
    def alg(self):
        return self.source.alg

    def __repr__(self):
        return f"ModMorphism({self.source.dim} -> {self.target.dim})"

    def compose(self, other: "ModMorphism") -> "ModMorphism":
        """self then other."""
        if other.source is not self.target:
            raise ReplikaError("composition endpoints do not match")
        p = self.source.field.p
        return ModMorphism(self.source, other.target, (self.matrix @ other.matrix) % p,
                           check=False)

    @property
    def is_zero(self) -> bool:
        return not self.matrix.any()

    @property
    def is_injective(self) -> bool:
        from .linalg import rank
        return rank(self.matrix, self.source.field.p) == self.source.dim

    @property
    def is_surjective(self) -> bool:
        from .linalg import rank
        return rank(self.matrix, self.source.field.p) == self.target.dim


def zero_module(alg: SCAlgebra, field: PrimeField) -> FDModule:
    return FDModule(alg, field, np.zeros((alg.dim, 0, 0), dtype=np.int64), check=False)


def zero_morphism(m: FDModule, n: FDModule) -> ModMorphism:
    return ModMorphism(m, n, np.zeros((m.dim, n.dim), dtype=np.int64), check=False)


def identity_morphism(m: FDModule) -> ModMorphism:
    return ModMorphism(m, m, np.eye(m.dim, dtype=np.int64), check=False)


# ---------------------------------------------------------------------------
# Hom spaces


def _hom_system(m: FDModule, n: FDModule):
    """Coefficient matrix of the block intertwining equations.

    Unknowns are the entries of one block F_v per vertex (m_v x n_v, row
    major); equations come from the algebra generators.
    """
    mdims = m.vertex_dims
    ndims = n.vertex_dims
    nv = m.alg.n_vertices
    offsets = np.zeros(nv + 1, dtype=np.int64)
    for v in range(nv):
        offsets[v + 1] = offsets[v] + mdims[v] * ndims[v]
    total = int(offsets[-1])
    mblocks = m.generator_blocks()
    nblocks = n.generator_blocks()
    rows = []
    p = m.field.p
    for g in m.alg.generator_indices:
        u = int(m.alg.left_vertex[g])
        v = int(m.alg.right_vertex[g])
        bm = mblocks[g]  # m_u x m_v
        bn = nblocks[g]  # n_u x n_v
        if mdims[u] * ndims[v] == 0:
            continue
        eq = np.zeros((mdims[u] * ndims[v], total), dtype=np.int64)
        # (bm @ F_v)[a, c] - (F_u @ bn)[a, c] = 0
        for a in range(mdims[u]):
            for c in range(ndims[v]):
                row = a * ndims[v] + c
                if mdims[v] and ndims[v]:
                    base = int(offsets[v])
                    for t in range(mdims[v]):
                        eq[row, base + t * ndims[v] + c] += int(bm[a, t])
                if mdims[u] and ndims[u]:
                    base = int(offsets[u])
                    for s in range(ndims[u]):
                        eq[row, base + a * ndims[u] + s] -= int(bn[s, c])
        rows.append(eq % p)
    if rows:
        system = np.vstack(rows)
    else:
        system = np.zeros((0, total), dtype=np.int64)
    return system, offsets


def hom_dim(m: FDModule, n: FDModule) -> int:
    """dim Hom(m, n), cached."""
    if m.alg is not n.alg:
        raise ReplikaError("hom endpoints live over different algebras")
    cache = m.alg._cache.setdefault(("homdim", m.field.p), {})
    key = (m.uid, n.uid)
    if key not in cache:
        if m.dim == 0 or n.dim == 0:
            cache[key] = 0
        else:
            system, offsets = _hom_system(m, n)
            from .linalg import rank
            cache[key] = int(offsets[-1]) - rank(system, m.field.p)
    return cache[key]


def hom_basis(m: FDModule, n: FDModule):
    """A basis of Hom(m, n) as ModMorphisms, cached."""
    if m.alg is not n.alg:
        raise ReplikaError("hom endpoints live over different algebras")
    cache = m.alg._cache.setdefault(("hombasis", m.field.p), {})
    key = (m.uid, n.uid)
    if key in cache:
        return cache[key]
    p = m.field.p
    out = []
    if m.dim and n.dim:
        system, offsets = _hom_system(m, n)
        solutions = right_kernel(system, p)
        nv = m.alg.n_vertices
        mdims = m.vertex_dims
        ndims = n.vertex_dims
        embeds = [m.vertex_embedding(v) for v in range(nv)]
        nrows = [n.vertex_spaces()[v][0] for v in range(nv)]
        for z in solutions:
            f = np.zeros((m.dim, n.dim), dtype=np.int64)
            for v in range(nv):
                if mdims[v] == 0 or ndims[v] == 0:
                    continue
                fv = z[int(offsets[v]): int(offsets[v + 1])].reshape(mdims[v], ndims[v])
                f = (f + embeds[v] @ fv @ nrows[v]) % p
            out.append(ModMorphism(m, n, f, check=False))
    cache[key] = out
    hd = m.alg._cache.setdefault(("homdim", m.field.p), {})
    hd[key] = len(out)
    return out


# ---------------------------------------------------------------------------
# Sub/quotient constructions


def submodule(m: FDModule, rows) -> tuple:
    """(S, incl) for the submodule spanned by the given rows.

    The rowspace must be closed under the action; this is asserted.
    """
    p = m.field.p
    r, piv = rref(np.asarray(rows, dtype=np.int64) % p, p)
    k = r.shape[0]
    if k == 0:
        s = zero_module(m.alg, m.field)
        return s, ModMorphism(s, m, np.zeros((0, m.dim), dtype=np.int64), check=False)
    acts = np.zeros((m.alg.dim, k, k), dtype=np.int64)
    for b in range(m.alg.dim):
        moved = (r @ m.acts[b]) % p
        coords = coords_in_rref(r, piv, moved, p)
        if not ((coords @ r) % p == moved).all():
            raise ReplikaError("rows do not span a submodule")
        acts[b] = coords
    s = FDModule(m.alg, m.field, acts, check=False)
    return s, ModMorphism(s, m, r, check=False)


def quotient(m: FDModule, rows) -> tuple:
    """(Q, proj) for the quotient of m by the rowspace of rows."""
    p = m.field.p
    r, piv = rref(np.asarray(rows, dtype=np.int64).reshape(-1, m.dim) % p, p)
    free = [j for j in range(m.dim) if j not in piv]
    d = m.dim
    proj = np.eye(d, dtype=np.int64)
    if r.shape[0]:
        proj = (proj - np.eye(d, dtype=np.int64)[:, piv] @ r) % p
    proj = proj[:, free]
    lift = np.eye(d, dtype=np.int64)[free, :]
    k = len(free)
    acts = np.zeros((m.alg.dim, k, k), dtype=np.int64)
    for b in range(m.alg.dim):
        acts[b] = (lift @ m.acts[b] @ proj) % p
    q = FDModule(m.alg, m.field, acts, check=False)
    return q, ModMorphism(m, q, proj, check=False)


def kernel(f: ModMorphism) -> tuple:
    """(K, incl) with incl the inclusion of ker f into the source."""
    rows = left_kernel(f.matrix, f.source.field.p)
    if rows.shape[0] == 0:
        rows = np.zeros((0, f.source.dim), dtype=np.int64)
    return submodule(f.source, rows)


def image(f: ModMorphism) -> tuple:
    """(I, incl, epi) with I the image inside the target."""
    p = f.source.field.p
    img, incl = submodule(f.target, f.matrix)
    r, piv = rref(f.matrix, p)
    epi = ModMorphism(f.source, img, coords_in_rref(r, piv, f.matrix, p), check=False)
    return img, incl, epi


def cokernel(f: ModMorphism) -> tuple:
    """(C, proj) with proj the projection of the target onto coker f."""
    return quotient(f.target, f.matrix)


def direct_sum(mods) -> tuple:
    """(M, offsets) with M the block-diagonal direct sum."""
    mods = list(mods)
    if not mods:
        raise ReplikaError("direct_sum of an empty list needs an algebra")
    alg, field = mods[0].alg, mods[0].field
    dims = [m.dim for m in mods]
    total = sum(dims)
    acts = np.zeros((alg.dim, total, total), dtype=np.int64)
    offsets = []
    pos = 0
    for m in mods:
        acts[:, pos: pos + m.dim, pos: pos + m.dim] = m.acts
        offsets.append(pos)
        pos += m.dim
    return FDModule(alg, field, acts, check=False), offsets


def summand_injection(total: FDModule, comp: FDModule, offset: int) -> ModMorphism:
    m = np.zeros((comp.dim, total.dim), dtype=np.int64)
    m[:, offset: offset + comp.dim] = np.eye(comp.dim, dtype=np.int64)
    return ModMorphism(comp, total, m, check=False)


def summand_projection(total: FDModule, comp: FDModule, offset: int) -> ModMorphism:
    m = np.zeros((total.dim, comp.dim), dtype=np.int64)
    m[offset: offset + comp.dim, :] = np.eye(comp.dim, dtype=np.int64)
    return ModMorphism(total, comp, m, check=False)


# ---------------------------------------------------------------------------
# Standard modules


def standard_module(alg: SCAlgebra, field: PrimeField, kind: str, vertex: int) -> FDModule:
    """Simple, projective (e_v Lambda) or injective (D(Lambda e_v)) module
    at a flat vertex."""
    if not 0 <= vertex < alg.n_vertices:
        raise ReplikaError(f"vertex {vertex} out of range")
    cache = alg._cache.setdefault(("standard", field.p), {})
    key = (kind, vertex)
    if key in cache:
        return cache[key]
    if kind == "simple":
        acts = np.zeros((alg.dim, 1, 1), dtype=np.int64)
        acts[alg.idempotent_index[vertex], 0, 0] = 1
        mod = FDModule(alg, field, acts, check=False)
    elif kind == "projective":
        rows = [i for i in range(alg.dim) if int(alg.left_vertex[i]) == vertex]
        pos = {b: a for a, b in enumerate(rows)}
        d = len(rows)
        acts = np.zeros((alg.dim, d, d), dtype=np.int64)
        for c in range(alg.dim):
            for a, b in enumerate(rows):
                k = alg.product(b, c)
                if k >= 0:
                    acts[c, a, pos[k]] = 1
        mod = FDModule(alg, field, acts, check=False)
    elif kind == "injective":
        cols = [i for i in range(alg.dim) if int(alg.right_vertex[i]) == vertex]
        pos = {b: a for a, b in enumerate(cols)}
        d = len(cols)
        acts = np.zeros((alg.dim, d, d), dtype=np.int64)
        for c in range(alg.dim):
            for j, b in enumerate(cols):
                k = alg.product(c, b)
                if k >= 0:
                    acts[c, pos[k], j] = 1
        mod = FDModule(alg, field, acts, check=False)
    else:
        raise ReplikaError(f"unknown standard module kind {kind!r}")
    cache[key] = mod
    return mod


def regular_module(alg: SCAlgebra, field: PrimeField) -> FDModule:
    """Lambda as a right module over itself."""
    d = alg.dim
    acts = np.zeros((d, d, d), dtype=np.int64)
    for c in range(d):
        for b in range(d):
            k = alg.product(b, c)
            if k >= 0:
                acts[c, b, k] = 1
    return FDModule(alg, field, acts, check=False)


def rad_top_soc(m: FDModule):
    """((rad, incl), (top, proj), (soc, incl))."""
    p = m.field.p
    rad_idx = m.alg.radical_indices
    if rad_idx and m.dim:
        stacked = np.vstack([m.acts[b] for b in rad_idx])
        hstacked = np.hstack([m.acts[b] for b in rad_idx])
    else:
        stacked = np.zeros((0, m.dim), dtype=np.int64)
        hstacked = np.zeros((m.dim, 0), dtype=np.int64)
    rad = submodule(m, stacked)
    top = quotient(m, stacked)
    soc_rows = left_kernel(hstacked, p) if hstacked.size else np.eye(m.dim, dtype=np.int64)
    soc = submodule(m, soc_rows.reshape(-1, m.dim))
    return rad, top, soc


def inflate_module(emb: TruncationEmbedding, m: FDModule) -> FDModule:
    """View an alg-module as a module over the larger replicated algebra."""
    if m.alg is not emb.source:
        raise ReplikaError("module does not live over the embedding source")
    acts = np.zeros((emb.target.dim, m.dim, m.dim), dtype=np.int64)
    acts[emb.basis_map] = m.acts
    return FDModule(emb.target, m.field, acts, check=False)


def deflate_module(emb: TruncationEmbedding, m: FDModule) -> FDModule:
    """Restrict a target-algebra module supported on the embedded window."""
    if m.alg is not emb.target:
        raise ReplikaError("module does not live over the embedding target")
    for v in emb.killed_vertices:
        if m.acts[emb.target.idempotent_index[v]].any():
            raise ReplikaError("module support leaves the embedded window")
    return FDModule(emb.source, m.field, m.acts[emb.basis_map], check=False)
