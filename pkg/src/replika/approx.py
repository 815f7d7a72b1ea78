"""Minimal left/right add(T)-approximations, faithfulness, Gen and Cogen.

Approximations start from the universal map assembled out of a full Hom
basis into (or from) each indecomposable summand class of T, then drop
summand copies greedily as long as the approximation property survives.
Krull-Schmidt makes the resulting multiplicities canonical; the matrix
realization depends on basis choices, so callers compare results up to
isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decompose import decompose, fingerprint, is_isomorphic
from .errors import ReplikaError
from .linalg import left_kernel, rank
from .modules import (
    FDModule,
    ModMorphism,
    direct_sum,
    hom_basis,
    hom_dim,
    zero_module,
)


def add_classes(t, seed: int = 0):
    """Distinct indecomposable summand classes of t (module or list)."""
    parts = list(t) if isinstance(t, (list, tuple)) else decompose(t, seed)
    classes = []
    for part in sorted(parts, key=fingerprint):
        if part.is_zero:
            continue
        if not any(is_isomorphic(part, c, seed) for c in classes):
            classes.append(part)
    return classes


@dataclass
class Approximation:
    map: ModMorphism
    copies: list  # class index per indecomposable copy of the middle term
    classes: list  # the distinct add(T) classes


def _left_property_holds(x, fmat, copies, classes, pair_homs, x_homs, p):
    """Hom(T', U) -> Hom(X, U) surjective for every class U."""
    blocks = []
    pos = 0
    for j in copies:
        blocks.append((j, pos))
        pos += classes[j].dim
    for u, target_basis in enumerate(x_homs):
        want = len(target_basis)
        if want == 0:
            continue
        composites = []
        for j, pos in blocks:
            for g in pair_homs[(j, u)]:
                composites.append(
                    ((fmat[:, pos: pos + classes[j].dim] @ g.matrix) % p).reshape(-1)
                )
        if not composites or rank(np.vstack(composites), p) < want:
            return False
    return True


def minimal_left_approx(x: FDModule, t, seed: int = 0) -> Approximation:
    """Minimal left add(t)-approximation f: x -> T'.

    Hom(T', U) -> Hom(x, U) is surjective for every U in add(t) and no
    summand of T' can be dropped; the zero map to the zero module is
    returned when Hom(x, t) = 0.
    """
    classes = t if isinstance(t, list) else add_classes(t, seed)
    p = x.field.p
    x_homs = [hom_basis(x, c) for c in classes]
    pair_homs = {
        (j, u): hom_basis(cj, cu)
        for j, cj in enumerate(classes)
        for u, cu in enumerate(classes)
    }
    copies = [j for j, hs in enumerate(x_homs) for _ in hs]
    if not copies:
        z = zero_module(x.alg, x.field)
        return Approximation(
            ModMorphism(x, z, np.zeros((x.dim, 0), dtype=np.int64), check=False),
            [], classes)
    fmat = np.hstack([h.matrix for hs in x_homs for h in hs]) % p

    changed = True
    while changed:
        changed = False
        for drop in range(len(copies)):
            kept = [i for i in range(len(copies)) if i != drop]
            cols = []
            pos = 0
            for i, j in enumerate(copies):
                if i != drop:
                    cols.extend(range(pos, pos + classes[j].dim))
                pos += classes[j].dim
            cand = fmat[:, cols]
            cand_copies = [copies[i] for i in kept]
            if _left_property_holds(x, cand, cand_copies, classes, pair_homs, x_homs, p):
                fmat, copies = cand, cand_copies
                changed = True
                break

    target, _ = direct_sum([classes[j] for j in copies]) if copies else (
        zero_module(x.alg, x.field), [])
    return Approximation(ModMorphism(x, target, fmat, check=False), copies, classes)


def _right_property_holds(x, gmat, copies, classes, pair_homs, x_homs, p):
    """Hom(U, T') -> Hom(U, x) surjective for every class U."""
    blocks = []
    pos = 0
    for j in copies:
        blocks.append((j, pos))
        pos += classes[j].dim
    for u, source_basis in enumerate(x_homs):
        want = len(source_basis)
        if want == 0:
            continue
        composites = []
        for j, pos in blocks:
            for g in pair_homs[(u, j)]:
                composites.append(
                    ((g.matrix @ gmat[pos: pos + classes[j].dim, :]) % p).reshape(-1)
                )
        if not composites or rank(np.vstack(composites), p) < want:
            return False
    return True


def minimal_right_approx(x: FDModule, t, seed: int = 0) -> Approximation:
    """Minimal right add(t)-approximation g: T' -> x."""
    classes = t if isinstance(t, list) else add_classes(t, seed)
    p = x.field.p
    x_homs = [hom_basis(c, x) for c in classes]
    pair_homs = {
        (u, j): hom_basis(cu, cj)
        for j, cj in enumerate(classes)
        for u, cu in enumerate(classes)
    }
    copies = [j for j, hs in enumerate(x_homs) for _ in hs]
    if not copies:
        z = zero_module(x.alg, x.field)
        return Approximation(
            ModMorphism(z, x, np.zeros((0, x.dim), dtype=np.int64), check=False),
            [], classes)
    gmat = np.vstack([h.matrix for hs in x_homs for h in hs]) % p

    changed = True
    while changed:
        changed = False
        for drop in range(len(copies)):
            kept = [i for i in range(len(copies)) if i != drop]
            rows = []
            pos = 0
            for i, j in enumerate(copies):
                if i != drop:
                    rows.extend(range(pos, pos + classes[j].dim))
                pos += classes[j].dim
            cand = gmat[rows, :]
            cand_copies = [copies[i] for i in kept]
            if _right_property_holds(x, cand, cand_copies, classes, pair_homs, x_homs, p):
                gmat, copies = cand, cand_copies
                changed = True
                break

    source, _ = direct_sum([classes[j] for j in copies]) if copies else (
        zero_module(x.alg, x.field), [])
    return Approximation(ModMorphism(source, x, gmat, check=False), copies, classes)


def is_faithful(m: FDModule) -> bool:
    """Zero annihilator: no algebra element acts as zero on m."""
    if m.is_zero:
        return m.alg.dim == 0
    flat = m.acts.reshape(m.alg.dim, -1)
    return left_kernel(flat, m.field.p).shape[0] == 0


def in_gen(t, x: FDModule, seed: int = 0) -> bool:
    """Is x generated by t (some t^r ->> x)?"""
    classes = t if isinstance(t, list) else add_classes(t, seed)
    rows = []
    for c in classes:
        rows.extend(h.matrix for h in hom_basis(c, x))
    if not rows:
        return x.is_zero
    return rank(np.vstack(rows), x.field.p) == x.dim


def in_cogen(t, x: FDModule, seed: int = 0) -> bool:
    """Is x cogenerated by t (some x embeds in t^r)?"""
    classes = t if isinstance(t, list) else add_classes(t, seed)
    cols = []
    for c in classes:
        cols.extend(h.matrix for h in hom_basis(x, c))
    if not cols:
        return x.is_zero
    return rank(np.hstack(cols), x.field.p) == x.dim
