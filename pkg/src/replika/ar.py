"""Transpose, duality, the Auslander-Reiten translates, and the list of
indecomposables of a hereditary algebra by tau-minus knitting.

The transpose is computed from a minimal projective presentation
P_1 -> P_0 -> M -> 0: writing the presentation map through elements
x in e_v B e_u, the transpose is the cokernel of the induced map between
the corresponding projectives over the opposite algebra.  D swaps an
algebra with its opposite by transposing every action matrix, and
tau = D Tr, tau^{-1} = Tr D.
"""

from __future__ import annotations

import numpy as np

from .decompose import fingerprint, is_isomorphic
from .errors import NotDynkinError, ReplikaError
from .homology import projective_cover
from .modules import (
    FDModule,
    ModMorphism,
    cokernel,
    direct_sum,
    kernel,
    standard_module,
    zero_module,
)


def dual_module(m: FDModule) -> FDModule:
    """D(m) = Hom_k(m, k) as a right module over the opposite algebra."""
    op = m.alg.opposite()
    acts = np.stack([m.acts[b].T for b in range(m.alg.dim)]) if m.dim else m.acts
    return FDModule(op, m.field, acts, check=False)


def _projective_rows(alg, v):
    return [i for i in range(alg.dim) if int(alg.left_vertex[i]) == v]


def _left_mult_matrix(alg, x_coeffs, v_from, v_to, p):
    """Matrix of y -> x.y from e_{v_from} Lambda to e_{v_to} Lambda.

    x_coeffs maps basis index -> coefficient; x must lie in
    e_{v_to} Lambda e_{v_from}."""
    rows_from = _projective_rows(alg, v_from)
    rows_to = _projective_rows(alg, v_to)
    pos_to = {b: i for i, b in enumerate(rows_to)}
    mat = np.zeros((len(rows_from), len(rows_to)), dtype=np.int64)
    for c, coeff in x_coeffs.items():
        for i, b in enumerate(rows_from):
            k = alg.product(c, b)
            if k >= 0:
                mat[i, pos_to[k]] = (mat[i, pos_to[k]] + coeff) % p
    return mat


def transpose(m: FDModule) -> FDModule:
    """Tr m over the opposite algebra (zero when m is projective)."""
    alg, p = m.alg, m.field.p
    op = alg.opposite()
    if m.is_zero:
        return zero_module(op, m.field)
    p0, eps, spec0 = projective_cover(m)
    k, incl = kernel(eps)
    if k.is_zero:
        return zero_module(op, m.field)
    p1, eps1, spec1 = projective_cover(k)
    d = (eps1.matrix @ incl.matrix) % p  # P_1 -> P_0

    offs0 = []
    pos = 0
    for v in spec0:
        offs0.append(pos)
        pos += len(_projective_rows(alg, v))
    offs1 = []
    pos = 0
    for v in spec1:
        offs1.append(pos)
        pos += len(_projective_rows(alg, v))

    # presentation elements x_{kl} in e_{v_l} Lambda e_{u_k}
    elements = {}
    for kk, u in enumerate(spec1):
        rows_u = _projective_rows(alg, u)
        gen = offs1[kk] + rows_u.index(alg.idempotent_index[u])
        row = d[gen]
        for ll, v in enumerate(spec0):
            rows_v = _projective_rows(alg, v)
            seg = row[offs0[ll]: offs0[ll] + len(rows_v)]
            coeffs = {rows_v[i]: int(c) for i, c in enumerate(seg) if c}
            if coeffs:
                elements[(kk, ll)] = coeffs

    # over the opposite algebra: map  (+) e_{v_l} op  ->  (+) e_{u_k} op
    op_parts0 = [standard_module(op, m.field, "projective", v) for v in spec0]
    op_parts1 = [standard_module(op, m.field, "projective", u) for u in spec1]
    q0, qoffs0 = direct_sum(op_parts0) if op_parts0 else (zero_module(op, m.field), [])
    q1, qoffs1 = direct_sum(op_parts1) if op_parts1 else (zero_module(op, m.field), [])
    big = np.zeros((q0.dim, q1.dim), dtype=np.int64)
    for (kk, ll), coeffs in elements.items():
        block = _left_mult_matrix(op, coeffs, spec0[ll], spec1[kk], p)
        big[qoffs0[ll]: qoffs0[ll] + block.shape[0],
            qoffs1[kk]: qoffs1[kk] + block.shape[1]] = block
    f = ModMorphism(q0, q1, big)
    return cokernel(f)[0]


def tau(m: FDModule) -> FDModule:
    """D Tr m (zero when m is projective)."""
    return dual_module(transpose(m))


def tau_minus(m: FDModule) -> FDModule:
    """Tr D m (zero when m is injective)."""
    return transpose(dual_module(m))


def hereditary_indecomposables(alg, field):
    """All indecomposable modules of a hereditary Dynkin algebra.

    tau-minus orbits of the projectives; complete by Gabriel's theorem.
    Deterministic order: orbit steps r = 0, 1, ... and vertex within each.
    """
    if alg.m != 0:
        raise ReplikaError("hereditary enumeration expects the level-0 algebra")
    if alg.quiver.dynkin_type() is None:
        raise NotDynkinError(f"{alg.quiver.name} is not Dynkin")
    found = []
    frontier = [standard_module(alg, field, "projective", v)
                for v in range(alg.n_vertices)]
    guard = 0
    while frontier:
        found.extend(frontier)
        nxt = []
        for x in frontier:
            y = tau_minus(x)
            if not y.is_zero:
                nxt.append(y)
        frontier = nxt
        guard += 1
        if guard > 4 * alg.dim:
            raise ReplikaError("tau-minus orbit failed to terminate")
    # sanity: pairwise distinct
    fps = [fingerprint(x) for x in found]
    for i in range(len(found)):
        for j in range(i + 1, len(found)):
            if fps[i] == fps[j] and is_isomorphic(found[i], found[j]):
                raise ReplikaError("tau-minus orbits produced a duplicate")
    return found
