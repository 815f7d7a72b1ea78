"""Krull-Schmidt decomposition, isomorphism testing, and iso-invariant
fingerprints.

Splitting works MeatAxe-style: pick a random endomorphism, factor its
characteristic polynomial, and cut the module along the coprime primary
components (Fitting decomposition; the components are submodules because
the operator commutes with the action).  Retries draw a fresh operator;
over p = 32003 a handful of attempts suffices with overwhelming margin.
"""

from __future__ import annotations

import hashlib
import json

import numpy as np

from .errors import DecompositionError, ReplikaError
from .linalg import charpoly, factor_poly, left_kernel, poly_eval_matrix, rank, solve_left
from .modules import FDModule, ModMorphism, hom_basis, hom_dim, standard_module, submodule

_SPLIT_ATTEMPTS = 24
_ISO_SAMPLES = 64


def _random_endo(end_basis, rng, p):
    coeffs = rng.integers(0, p, size=len(end_basis))
    total = np.zeros_like(end_basis[0].matrix)
    for c, h in zip(coeffs, end_basis):
        total = (total + int(c) * h.matrix) % p
    return total


def _matrix_power(a, e, p):
    out = np.eye(a.shape[0], dtype=np.int64)
    for _ in range(e):
        out = (out @ a) % p
    return out


def decompose(m: FDModule, seed: int = 0):
    """Indecomposable summands of m, sorted by fingerprint.

    Deterministic given the seed; the resulting multiset is seed
    independent.  Raises DecompositionError if the retry budget runs out
    without a certified answer (never returns a wrong one).
    """
    if m.is_zero:
        return []
    end = hom_basis(m, m)
    if len(end) == 1:
        return [m]
    p = m.field.p
    rng = np.random.default_rng(seed)
    saw_nonlinear = False
    for _ in range(_SPLIT_ATTEMPTS):
        theta = _random_endo(end, rng, p)
        factors = factor_poly(charpoly(theta, p), p, rng)
        if len(factors) == 1:
            if len(factors[0][0]) > 2:
                saw_nonlinear = True
            continue
        parts = []
        total = 0
        for q, e in factors:
            block = _matrix_power(poly_eval_matrix(q, theta, p), e, p)
            rows = left_kernel(block, p)
            sub, _ = submodule(m, rows.reshape(-1, m.dim))
            total += sub.dim
            parts.extend(decompose(sub, seed + 1))
        if total != m.dim:
            raise DecompositionError("Fitting components do not fill the module")
        return sorted(parts, key=fingerprint)
    if saw_nonlinear:
        raise DecompositionError(
            "splitting failed: an endomorphism had an irreducible nonlinear "
            "characteristic factor (possible residue field extension)"
        )
    # every sampled operator was scalar plus nilpotent: local endomorphism ring
    return [m]


def fingerprint(m: FDModule):
    """Iso-invariant: dimension, vertex dimensions, and Hom dimensions
    against all standard modules in both directions."""
    if not hasattr(m, "_fingerprint"):
        dims_to = []
        dims_from = []
        for kind in ("simple", "projective", "injective"):
            for v in range(m.alg.n_vertices):
                std = standard_module(m.alg, m.field, kind, v)
                dims_to.append(hom_dim(m, std))
                dims_from.append(hom_dim(std, m))
        m._fingerprint = (m.dim, m.vertex_dims, tuple(dims_to), tuple(dims_from))
    return m._fingerprint


def module_id(m: FDModule) -> str:
    """Short content id, stable across matrix realizations of the iso class."""
    blob = json.dumps(fingerprint(m)).encode()
    return hashlib.sha1(blob).hexdigest()[:12]


def summand_key(mods) -> tuple:
    """Sorted fingerprint tuple of a list of modules (multiset identity)."""
    return tuple(sorted(fingerprint(x) for x in mods))


def tilting_id(mods) -> str:
    blob = json.dumps(summand_key(mods)).encode()
    return hashlib.sha1(blob).hexdigest()[:12]


def _try_combos(m, n, basis, combos, p):
    for coeffs in combos:
        f = np.zeros((m.dim, n.dim), dtype=np.int64)
        for c, h in zip(coeffs, basis):
            f = (f + int(c) * h.matrix) % p
        if rank(f, p) == m.dim:
            return ModMorphism(m, n, f, check=False)
    return None


def iso_witness(m: FDModule, n: FDModule, seed: int = 0):
    """An invertible intertwiner m -> n, or None.

    For modules whose endomorphism rings are 1-dimensional the answer is
    exact (composite test); otherwise a seeded random search with a small
    deterministic grid as fallback, which at the supported primes fails to
    find an existing isomorphism with negligible probability.
    """
    if m.alg is not n.alg or m.field != n.field:
        return None
    if m.dim != n.dim or m.vertex_dims != n.vertex_dims:
        return None
    if m.dim == 0:
        return ModMorphism(m, n, np.zeros((0, 0), dtype=np.int64), check=False)
    if fingerprint(m) != fingerprint(n):
        return None
    p = m.field.p
    fwd = hom_basis(m, n)
    bwd = hom_basis(n, m)
    if not fwd or not bwd:
        return None
    if hom_dim(m, m) == 1 and hom_dim(n, n) == 1:
        # local rings k: some composite f.g is an iso iff m and n are isomorphic
        for f in fwd:
            for g in bwd:
                if f.compose(g).matrix.any():
                    return f
        return None
    rng = np.random.default_rng(seed)
    combos = (rng.integers(0, p, size=len(fwd)) for _ in range(_ISO_SAMPLES))
    found = _try_combos(m, n, fwd, combos, p)
    if found is not None:
        return found
    if len(fwd) <= 7:
        from itertools import product
        found = _try_combos(m, n, fwd, product(range(3), repeat=len(fwd)), p)
        if found is not None:
            return found
    return None


def is_isomorphic(m: FDModule, n: FDModule, seed: int = 0) -> bool:
    """True iff an invertible intertwiner exists.

    General modules are decomposed first and their summand multisets
    matched; indecomposables go through iso_witness.
    """
    if m.dim != n.dim:
        return False
    if m.dim == 0:
        return True
    if m is n:
        return True
    if m.vertex_dims != n.vertex_dims or fingerprint(m) != fingerprint(n):
        return False
    if hom_dim(m, m) == 1 and hom_dim(n, n) == 1:
        return iso_witness(m, n, seed) is not None
    parts_m = decompose(m, seed)
    parts_n = decompose(n, seed)
    if len(parts_m) != len(parts_n):
        return False
    if len(parts_m) == 1:
        return iso_witness(m, n, seed) is not None
    remaining = list(parts_n)
    for a in parts_m:
        match = next(
            (i for i, b in enumerate(remaining) if is_isomorphic(a, b, seed)), None
        )
        if match is None:
            return False
        remaining.pop(match)
    return True


def conjugate_module(m: FDModule, seed: int = 0) -> FDModule:
    """The same module written in a random basis (test helper)."""
    p = m.field.p
    rng = np.random.default_rng(seed)
    while True:
        u = rng.integers(0, p, size=(m.dim, m.dim))
        if rank(u, p) == m.dim:
            break
    u_inv = solve_left(u, np.eye(m.dim, dtype=np.int64), p)
    acts = np.stack([(u_inv @ m.acts[b] @ u) % p for b in range(m.alg.dim)]) if m.dim else m.acts
    out = FDModule(m.alg, m.field, acts, check=False)
    return out
