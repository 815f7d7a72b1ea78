"""Covers, envelopes, resolutions, Ext, syzygies and stable Hom.

Syzygy and cosyzygy computations happen "at the repetitive level": the
module is inflated into a wider replicated algebra (a window) with spare
layers in the direction the computation consumes, below for syzygies and
above for cosyzygies.  Inside the window every projective the computation
touches is the fat projective-injective of the repetitive algebra, so the
window computation agrees with the infinite one.
"""

from __future__ import annotations

import numpy as np

from .algebra import SCAlgebra, TruncationEmbedding, layer_map, window_embedding
from .errors import ReplikaError
from .linalg import coords_in_rref, left_kernel, rank, rref, solve_left
from .modules import (
    FDModule,
    ModMorphism,
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    inflate_module,
    kernel,
    quotient,
    rad_top_soc,
    standard_module,
    submodule,
    zero_module,
    zero_morphism,
)


def _projective_basis_rows(alg: SCAlgebra, v: int):
    return [i for i in range(alg.dim) if int(alg.left_vertex[i]) == v]


def _injective_basis_cols(alg: SCAlgebra, v: int):
    return [i for i in range(alg.dim) if int(alg.right_vertex[i]) == v]


def _independent_row_indices(x: np.ndarray, p: int, need: int):
    """Indices of rows forming a basis of the row space (greedy)."""
    chosen = []
    acc = np.zeros((0, x.shape[1]), dtype=np.int64)
    for i in range(x.shape[0]):
        cand = np.vstack([acc, x[i: i + 1]])
        if rank(cand, p) > acc.shape[0]:
            chosen.append(i)
            acc, _ = rref(cand, p)
            if len(chosen) == need:
                break
    return chosen


def projective_cover(m: FDModule):
    """(P, epi, spec) with P = direct sum of e_v Lambda by top multiplicity.

    spec lists one flat vertex per indecomposable copy; the kernel of the
    epi sits inside rad P (checked through top dimensions).
    """
    alg, field, p = m.alg, m.field, m.field.p
    if m.is_zero:
        z = zero_module(alg, field)
        return z, ModMorphism(z, m, np.zeros((0, 0), dtype=np.int64), check=False), []
    _, (top, proj_top), _ = rad_top_soc(m)
    spec = []
    gens = []  # generator row vectors in M
    for v in range(alg.n_vertices):
        tdim = top.vertex_dims[v]
        if tdim == 0:
            continue
        mv_rows, _ = m.vertex_spaces()[v]
        imgs = (mv_rows @ proj_top.matrix) % p
        for i in _independent_row_indices(imgs, p, tdim):
            spec.append(v)
            gens.append(mv_rows[i])
    parts = [standard_module(alg, field, "projective", v) for v in spec]
    cover, offsets = direct_sum(parts) if parts else (zero_module(alg, field), [])
    epi = np.zeros((cover.dim, m.dim), dtype=np.int64)
    for copy, v in enumerate(spec):
        rows = _projective_basis_rows(alg, v)
        for a, b in enumerate(rows):
            epi[offsets[copy] + a] = (gens[copy] @ m.acts[b]) % p
    f = ModMorphism(cover, m, epi, check=False)
    if rank(epi, p) != m.dim:
        raise ReplikaError("projective cover construction failed to be surjective")
    _, (ptop, _), _ = rad_top_soc(cover)
    if ptop.dim != top.dim:
        raise ReplikaError("projective cover is not minimal")
    return cover, f, spec


def injective_envelope(m: FDModule):
    """(I, mono, spec) with I = direct sum of D(Lambda e_v) by socle multiplicity."""
    alg, field, p = m.alg, m.field, m.field.p
    if m.is_zero:
        z = zero_module(alg, field)
        return z, ModMorphism(m, z, np.zeros((0, 0), dtype=np.int64), check=False), []
    _, _, (soc, soc_incl) = rad_top_soc(m)
    spec = []
    functionals = []
    for v in range(alg.n_vertices):
        rows = soc_incl.matrix % p
        uv, _ = rref((rows @ m.acts[alg.idempotent_index[v]]) % p, p)
        if uv.shape[0] == 0:
            continue
        for k in range(uv.shape[0]):
            unit = np.zeros(uv.shape[0], dtype=np.int64)
            unit[k] = 1
            xi = solve_left(uv.T, unit, p)
            if xi is None:
                raise ReplikaError("socle functional solve failed")
            spec.append(v)
            functionals.append(xi)
    parts = [standard_module(alg, field, "injective", v) for v in spec]
    env, offsets = direct_sum(parts) if parts else (zero_module(alg, field), [])
    mono = np.zeros((m.dim, env.dim), dtype=np.int64)
    for copy, v in enumerate(spec):
        cols = _injective_basis_cols(alg, v)
        xi = functionals[copy]
        for j, b in enumerate(cols):
            mono[:, offsets[copy] + j] = (m.acts[b] @ xi) % p
    f = ModMorphism(m, env, mono, check=False)
    f._check_intertwines()
    if rank(mono, p) != m.dim:
        raise ReplikaError("injective envelope construction failed to be injective")
    _, _, (esoc, _) = rad_top_soc(env)
    if esoc.dim != soc.dim:
        raise ReplikaError("injective envelope is not minimal")
    return env, f, spec


def is_projective(m: FDModule) -> bool:
    if m.is_zero:
        return True
    _, epi, _ = projective_cover(m)
    return epi.source.dim == m.dim


def is_injective(m: FDModule) -> bool:
    if m.is_zero:
        return True
    _, mono, _ = injective_envelope(m)
    return mono.target.dim == m.dim


def is_projective_injective(m: FDModule) -> bool:
    return is_projective(m) and is_injective(m)


# ---------------------------------------------------------------------------
# Minimal projective resolutions (cached per module)


class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0."""

    def __init__(self, m: FDModule):
        self.module = m
        p0, eps, spec = projective_cover(m)
        self.terms = [p0]
        self.specs = [spec]
        self.maps = []  # maps[i]: P_{i+1} -> P_i (global matrices)
        self._kernel = kernel(eps)
        self.complete = self._kernel[0].dim == 0

    def extend(self, depth: int):
        guard = 4 * (self.module.alg.m + 2)
        while not self.complete and len(self.terms) <= depth:
            if len(self.terms) > guard:
                raise ReplikaError("projective resolution exceeded the length bound")
            k, incl = self._kernel
            pk, eps, spec = projective_cover(k)
            self.terms.append(pk)
            self.specs.append(spec)
            self.maps.append((eps.matrix @ incl.matrix) % self.module.field.p)
            self._kernel = kernel(eps)
            self.complete = self._kernel[0].dim == 0

    def term(self, i: int):
        self.extend(i)
        if i < len(self.terms):
            return self.terms[i]
        return None

    def length(self) -> int:
        self.extend(10**9 if not self.complete else 0)
        last = len(self.terms) - 1
        while last >= 0 and self.terms[last].dim == 0:
            last -= 1
        return last


def resolution(m: FDModule) -> Resolution:
    cache = m.alg._cache.setdefault(("resolution", m.field.p), {})
    if m.uid not in cache:
        cache[m.uid] = Resolution(m)
    return cache[m.uid]


def proj_dim(m: FDModule) -> int:
    """Projective dimension (0 for the zero module)."""
    if m.is_zero:
        return 0
    return resolution(m).length()


def syzygy(m: FDModule) -> FDModule:
    """First syzygy over the module's own algebra (kernel of the cover)."""
    _, eps, _ = projective_cover(m)
    return kernel(eps)[0]


def _hom_from_projective_data(alg, spec, offsets, n: FDModule):
    """Canonical data for Hom(P, N), P = sum of e_v Lambda copies.

    Returns (dim, build) where build(t) is the global matrix of the t-th
    canonical basis morphism.
    """
    p = n.field.p
    entries = []  # (copy, vertex, coordinate index)
    for copy, v in enumerate(spec):
        for c in range(n.vertex_dims[v]):
            entries.append((copy, v, c))

    pdim = sum(len(_projective_basis_rows(alg, v)) for v in spec)

    def build(t):
        copy, v, c = entries[t]
        rows_v, _ = n.vertex_spaces()[v]
        gen = rows_v[c]
        mat = np.zeros((pdim, n.dim), dtype=np.int64)
        rows = _projective_basis_rows(alg, v)
        for a, b in enumerate(rows):
            mat[offsets[copy] + a] = (gen @ n.acts[b]) % p
        return mat

    return len(entries), build


def _coordinatize(alg, spec, offsets, n: FDModule, mat):
    """Coordinates of a morphism P -> N in the canonical basis."""
    p = n.field.p
    coords = []
    for copy, v in enumerate(spec):
        rows = _projective_basis_rows(alg, v)
        gen_pos = rows.index(alg.idempotent_index[v])
        img = mat[offsets[copy] + gen_pos]
        rv, piv = n.vertex_spaces()[v]
        coords.extend(int(x) for x in coords_in_rref(rv, piv, img.reshape(1, -1), p)[0])
    return np.array(coords, dtype=np.int64)


def ext_dim(s: int, m: FDModule, n: FDModule) -> int:
    """dim Ext^s(m, n) from the cohomology of Hom(P_., n)."""
    if s < 0:
        raise ReplikaError("ext degree must be >= 0")
    if m.alg is not n.alg:
        raise ReplikaError("ext endpoints live over different algebras")
    if s == 0:
        return hom_dim(m, n)
    if m.is_zero or n.is_zero:
        return 0
    cache = m.alg._cache.setdefault(("ext", m.field.p), {})
    key = (s, m.uid, n.uid)
    if key in cache:
        return cache[key]
    res = resolution(m)
    res.extend(s + 1)
    alg, p = m.alg, m.field.p

    def offsets_of(spec):
        offs, pos = [], 0
        for v in spec:
            offs.append(pos)
            pos += len(_projective_basis_rows(alg, v))
        return offs

    def delta(i):
        """Matrix of Hom(P_{i-1}, n) -> Hom(P_i, n); rows index the domain basis."""
        if i >= len(res.terms) or res.terms[i].dim == 0 or res.terms[i - 1].dim == 0:
            dim_from = 0
            if i - 1 < len(res.terms) and res.terms[i - 1].dim:
                dim_from, _ = _hom_from_projective_data(
                    alg, res.specs[i - 1], offsets_of(res.specs[i - 1]), n)
            return np.zeros((dim_from, 0), dtype=np.int64)
        spec_from, spec_to = res.specs[i - 1], res.specs[i]
        offs_from, offs_to = offsets_of(spec_from), offsets_of(spec_to)
        dim_from, build = _hom_from_projective_data(alg, spec_from, offs_from, n)
        d = res.maps[i - 1]  # P_i -> P_{i-1}
        cols = []
        for t in range(dim_from):
            comp = (d @ build(t)) % p
            cols.append(_coordinatize(alg, spec_to, offs_to, n, comp))
        if not cols:
            dim_to, _ = _hom_from_projective_data(alg, spec_to, offs_to, n)
            return np.zeros((0, dim_to), dtype=np.int64)
        return np.vstack(cols)

    if s >= len(res.terms) or res.terms[s].dim == 0:
        cache[key] = 0
        return 0
    spec_s = res.specs[s]
    offs_s = offsets_of(spec_s)
    dim_s, _ = _hom_from_projective_data(alg, spec_s, offs_s, n)
    d_next = delta(s + 1)
    d_prev = delta(s)
    value = dim_s - rank(d_next, p) - rank(d_prev, p)
    cache[key] = value
    return value


# ---------------------------------------------------------------------------
# Syzygies and cosyzygies at the repetitive level


def omega_window(m: FDModule, s: int, depth: int = 1):
    """(module, embedding) for the s-th (co)syzygy inside a window.

    s > 0: iterated kernels of projective covers, with s + depth layers
    added below.  s < 0: iterated cokernels of injective envelopes, with
    |s| + depth layers above.  The returned module lives over the window
    algebra of the embedding.
    """
    if s == 0:
        emb = window_embedding(m.alg, 0, 0)
        return inflate_module(emb, m), emb
    if s > 0:
        emb = window_embedding(m.alg, below=s + depth, above=depth)
        cur = inflate_module(emb, m)
        for _ in range(s):
            _, epi, _ = projective_cover(cur)
            cur = kernel(epi)[0]
    else:
        emb = window_embedding(m.alg, below=0, above=-s + depth)
        cur = inflate_module(emb, m)
        for _ in range(-s):
            _, mono, _ = injective_envelope(cur)
            cur = cokernel(mono)[0]
    if cur.dim:
        support = cur.layer_support()
        # support touching the outermost window layer would mean the margin
        # argument failed; the next cover/envelope would then be wrong
        if s > 0 and min(support) < 1:
            raise ReplikaError("syzygy escaped the window margin")
        if s < 0 and max(support) > emb.target.m - 1:
            raise ReplikaError("cosyzygy escaped the window margin")
    return cur, emb


def omega(m: FDModule, s: int, depth: int = 1) -> FDModule:
    """The s-th repetitive-level (co)syzygy (over the window algebra)."""
    return omega_window(m, s, depth)[0]


def cokernel_of_envelope_step(m: FDModule) -> FDModule:
    """One cosyzygy step over the module's own algebra (callers manage
    window margins)."""
    if m.is_zero:
        return m
    _, mono, _ = injective_envelope(m)
    return cokernel(mono)[0]


def stable_hom_dim(m: FDModule, n: FDModule) -> int:
    """dim of Hom(m, n) modulo maps factoring through a projective.

    Any projective factorization factors through the projective cover of n,
    so the factoring subspace is Hom(m, P(n)) composed with the cover map.
    """
    if m.alg is not n.alg:
        raise ReplikaError("endpoints live over different algebras")
    total = hom_dim(m, n)
    if total == 0:
        return 0
    cover, epi, _ = projective_cover(n)
    through = hom_basis(m, cover)
    if not through:
        return total
    p = m.field.p
    flat = np.vstack([((h.matrix @ epi.matrix) % p).reshape(1, -1) for h in through])
    return total - rank(flat, p)


def degree(m: FDModule, _max_steps=None):
    """(l, N) with m isomorphic to the l-th cosyzygy of the layer-0 module N.

    Errors on projective-injective input; m must be indecomposable (not
    checked here; callers pass indecomposables).
    """
    if m.is_zero:
        raise ReplikaError("degree of the zero module is undefined")
    if is_projective_injective(m):
        raise ReplikaError("projective-injective modules have no degree")
    alg = m.alg
    emb = window_embedding(alg, below=2 * alg.m + 4, above=0)
    cur = inflate_module(emb, m)
    limit = _max_steps if _max_steps is not None else 2 * alg.m + 3
    steps = 0
    while cur.layer_support() != [emb.offset]:
        if steps > limit:
            raise ReplikaError("degree iteration exceeded its bound")
        _, epi, _ = projective_cover(cur)
        cur = kernel(epi)[0]
        if cur.is_zero:
            raise ReplikaError("module vanished under syzygies; projective at the repetitive level")
        steps += 1
    from .algebra import hereditary_algebra
    hered = hereditary_algebra(alg.quiver)
    restriction = TruncationEmbedding(
        hered, emb.target, layer_map(hered, emb.target, emb.offset), [
            v for v in range(emb.target.n_vertices)
            if not emb.offset * alg.quiver.n <= v < (emb.offset + 1) * alg.quiver.n
        ], offset=emb.offset)
    from .modules import deflate_module
    return steps, deflate_module(restriction, cur)


# ---------------------------------------------------------------------------
# Extension classes of short exact sequences, as stable maps to a cosyzygy


def _solve_in_hom(source, target, constraint, rhs):
    """Find h in Hom(source, target) with constraint(h.matrix) == rhs."""
    basis = hom_basis(source, target)
    if not basis:
        return None
    p = source.field.p
    stacked = np.vstack([constraint(h.matrix).reshape(1, -1) % p for h in basis])
    combo = solve_left(stacked, rhs.reshape(-1) % p, p)
    if combo is None:
        return None
    total = np.zeros_like(basis[0].matrix)
    for c, h in zip(combo, basis):
        total = (total + int(c) * h.matrix) % p
    return ModMorphism(source, target, total, check=False)


def ses_connecting_map(f: ModMorphism, g: ModMorphism):
    """The class of 0 -> A -f-> B -g-> C -> 0 as a map C -> coker(env A).

    Nonzero in the stable category iff the sequence does not split.  The
    computation must happen over an algebra where env A stays injective
    for one more cosyzygy step (a window).
    """
    a, b, c = f.source, f.target, g.target
    p = a.field.p
    env, iota, _ = injective_envelope(a)
    beta = _solve_in_hom(b, env, lambda x: (f.matrix @ x) % p, iota.matrix)
    if beta is None:
        raise ReplikaError("injective extension failed; window too small?")
    omega_a, q = cokernel(iota)
    sigma = solve_left(g.matrix, np.eye(c.dim, dtype=np.int64), p)
    if sigma is None:
        raise ReplikaError("sequence is not right exact")
    gamma = (sigma @ beta.matrix @ q.matrix) % p
    return ModMorphism(c, omega_a, gamma), omega_a


def morphism_cosyzygy(phi: ModMorphism):
    """Induced map coker(env U) -> coker(env V) of a morphism U -> V."""
    u, v = phi.source, phi.target
    p = u.field.p
    env_u, iota_u, _ = injective_envelope(u)
    env_v, iota_v, _ = injective_envelope(v)
    psi = _solve_in_hom(env_u, env_v, lambda x: (iota_u.matrix @ x) % p,
                        (phi.matrix @ iota_v.matrix) % p)
    if psi is None:
        raise ReplikaError("injective extension failed; window too small?")
    om_u, q_u = cokernel(iota_u)
    om_v, q_v = cokernel(iota_v)
    # lift Omega^-1 U along q_u: rows picked by the quotient construction
    lift = solve_left(q_u.matrix, np.eye(om_u.dim, dtype=np.int64), p)
    mat = (lift @ psi.matrix @ q_v.matrix) % p
    return ModMorphism(om_u, om_v, mat), om_u, om_v


def is_stably_zero(phi: ModMorphism) -> bool:
    """Does phi factor through a projective module?"""
    if phi.is_zero:
        return True
    p = phi.source.field.p
    cover, epi, _ = projective_cover(phi.target)
    through = hom_basis(phi.source, cover)
    if not through:
        return False
    flat = np.vstack([((h.matrix @ epi.matrix) % p).reshape(1, -1) for h in through])
    return solve_left(flat, phi.matrix.reshape(-1), p) is not None
