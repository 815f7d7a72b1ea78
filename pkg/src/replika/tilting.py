"""Tilting theory over the replicated algebra: recognition, enumeration,
complement chains, mutation, degrees, mutation teams, the left part, and
the witness search.

Every tilting module contains all projective-injective indecomposables
(faithfulness splits them off), so enumeration fixes those and searches
n-subsets of the remaining exceptional candidates.  Complement chains are
walked by minimal approximations: down-steps take kernels of minimal right
add(T)-approximations until surjectivity fails (the Bongartz end), up-steps
take cokernels of minimal left approximations until injectivity fails (the
sink end).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import SCAlgebra, TruncationEmbedding, hereditary_algebra, layer_map, window_embedding
from .approx import is_faithful, minimal_left_approx, minimal_right_approx
from .decompose import decompose, fingerprint, is_isomorphic, summand_key, tilting_id
from .errors import BongartzEnd, InternalCheckError, NotDynkinError, ReplikaError, SinkEnd
from .homology import (
    degree,
    ext_dim,
    injective_envelope,
    is_projective_injective,
    cokernel_of_envelope_step,
    proj_dim,
)
from .modules import (
    FDModule,
    cokernel,
    direct_sum,
    hom_dim,
    inflate_module,
    deflate_module,
    kernel,
    standard_module,
)


def exceptional_range(alg: SCAlgebra) -> int:
    """Ext degrees to test: 1..2m+1 (= gl.dim, beyond which Ext vanishes)."""
    return 2 * alg.m + 1


def is_exceptional(m: FDModule) -> bool:
    bound = exceptional_range(m.alg)
    return all(ext_dim(s, m, m) == 0 for s in range(1, bound + 1))


def is_partial_tilting(m: FDModule) -> bool:
    """Exceptional with finite projective dimension (automatic here)."""
    return is_exceptional(m)


def is_tilting(m: FDModule, seed: int = 0) -> bool:
    """Partial tilting with n(m+1) distinct indecomposable summands."""
    if not is_exceptional(m):
        return False
    parts = decompose(m, seed)
    classes = []
    for part in parts:
        if not any(is_isomorphic(part, c, seed) for c in classes):
            classes.append(part)
    return len(classes) == len(m.alg.idempotent_index)


def _pair_compatible(x: FDModule, y: FDModule) -> bool:
    bound = exceptional_range(x.alg)
    return all(
        ext_dim(s, x, y) == 0 and ext_dim(s, y, x) == 0
        for s in range(1, bound + 1)
    )


def is_tilting_summands(summands) -> bool:
    """Tilting test for an explicit list of distinct indecomposables."""
    alg = summands[0].alg
    if len(summands) != len(alg.idempotent_index):
        return False
    for i, x in enumerate(summands):
        if not is_exceptional(x):
            return False
        for y in summands[i + 1:]:
            if not _pair_compatible(x, y):
                return False
    return True


def projective_injectives(alg: SCAlgebra, field):
    """The fat projectives P_(i,q) for q >= 1 (n*m modules)."""
    n = alg.quiver.n
    return [standard_module(alg, field, "projective", q * n + (i - 1))
            for q in range(1, alg.m + 1) for i in range(1, n + 1)]


def enumerate_indecomposables(alg: SCAlgebra, field, with_degrees: bool = False):
    """All indecomposable modules (representation-finite only).

    Cosyzygy orbits of the hereditary indecomposables placed at layer 0,
    kept while supported within layers 0..m, plus the projective-injectives.
    """
    if alg.quiver.dynkin_type() is None:
        raise NotDynkinError(f"{alg.quiver.name} is not Dynkin")
    cache = alg._cache.setdefault(("ind", field.p), None)
    if cache is None:
        hered = hereditary_algebra(alg.quiver)
        from .ar import hereditary_indecomposables
        ind_a = hereditary_indecomposables(hered, field)
        base_emb = TruncationEmbedding(
            hered, alg, layer_map(hered, alg, 0),
            [v for v in range(alg.n_vertices) if v >= alg.quiver.n], offset=0)
        window = window_embedding(alg, below=0, above=alg.m + 2)
        out = []
        for pos, n0 in enumerate(ind_a):
            level = inflate_module(base_emb, n0)
            out.append((0, pos, level))
            cur = inflate_module(window, level)
            for step in range(1, 2 * alg.m + 3):
                cur = cokernel_of_envelope_step(cur)
                if cur.is_zero:
                    break
                support = cur.layer_support()
                lo, hi = min(support) - window.offset, max(support) - window.offset
                if 0 <= lo and hi <= alg.m:
                    out.append((step, pos, deflate_module(window, cur)))
        mods = [m for _, _, m in sorted(out, key=lambda t: (t[0], t[1]))]
        degs = [l for l, _, _ in sorted(out, key=lambda t: (t[0], t[1]))]
        pis = projective_injectives(alg, field)
        cache = (mods + pis, degs + [None] * len(pis))
        alg._cache[("ind", field.p)] = cache
    mods, degs = cache
    if with_degrees:
        return list(zip(mods, degs))
    return list(mods)


@dataclass
class TiltingRecord:
    summands: list
    tid: str
    pd_max: int
    faithful: bool
    is_tilting: bool = True


def _make_record(summands) -> TiltingRecord:
    ordered = sorted(summands, key=fingerprint)
    total, _ = direct_sum(ordered)
    return TiltingRecord(
        summands=ordered,
        tid=tilting_id(ordered),
        pd_max=max(proj_dim(x) for x in ordered),
        faithful=is_faithful(total),
    )


def enumerate_tilting(alg: SCAlgebra, field, pd_bound=None, seed: int = 0):
    """All basic tilting modules, optionally restricted to pd <= pd_bound.

    Deterministic order (lexicographic in the sorted candidate list).
    """
    if alg.quiver.dynkin_type() is None:
        raise NotDynkinError(f"{alg.quiver.name} is not Dynkin")
    pis = projective_injectives(alg, field)
    cands = [
        x for x in enumerate_indecomposables(alg, field)
        if not is_projective_injective(x) and is_exceptional(x)
    ]
    if pd_bound is not None:
        cands = [x for x in cands if proj_dim(x) <= pd_bound]
    cands.sort(key=fingerprint)
    n = alg.quiver.n
    compat = {}

    def ok(i, j):
        if (i, j) not in compat:
            compat[(i, j)] = _pair_compatible(cands[i], cands[j])
        return compat[(i, j)]

    records = []

    def grow(start, chosen):
        if len(chosen) == n:
            records.append(_make_record(pis + [cands[i] for i in chosen]))
            return
        for i in range(start, len(cands)):
            if all(ok(j, i) for j in chosen):
                grow(i + 1, chosen + [i])

    grow(0, [])
    return records


# ---------------------------------------------------------------------------
# Complement chains and mutation


@dataclass
class ConnectingSequence:
    """0 -> X_i -f-> T_i -g-> X_{i+1} -> 0 with T_i in add T."""

    f: object
    g: object
    mid: FDModule
    mid_copies: list


@dataclass
class ComplementChain:
    t_classes: list
    members: list
    sequences: list
    degrees: list
    pds: list

    @property
    def t(self) -> int:
        return len(self.members) - 1


def _check_chain_inputs(t_classes, hint, seed=0):
    alg = hint.alg
    if is_projective_injective(hint):
        raise ReplikaError("complements are taken at non-projective-injective summands")
    total, _ = direct_sum(list(t_classes) + [hint])
    if not is_tilting_summands(list(t_classes) + [hint]):
        raise ReplikaError("T plus the hint is not a tilting module")
    if not is_faithful(total):
        raise ReplikaError("T is not faithful")


def mutate(t_classes, x: FDModule, direction: str, seed: int = 0, check: bool = True):
    """One tilting mutation step at the complement x.

    direction 'up': cokernel of the minimal left add(T)-approximation
    (raises SinkEnd when it fails to be injective); 'down': kernel of the
    minimal right approximation (raises BongartzEnd when not surjective).
    Returns (new_complement, ConnectingSequence).
    """
    if check:
        _check_chain_inputs(t_classes, x, seed)
    if direction == "up":
        approx = minimal_left_approx(x, list(t_classes), seed)
        if not approx.map.is_injective:
            raise SinkEnd("left approximation not injective: sink complement reached")
        coker, proj = cokernel(approx.map)
        seq = ConnectingSequence(approx.map, proj, approx.map.target, approx.copies)
        return coker, seq
    if direction == "down":
        approx = minimal_right_approx(x, list(t_classes), seed)
        if not approx.map.is_surjective:
            raise BongartzEnd("right approximation not surjective: Bongartz complement reached")
        ker, incl = kernel(approx.map)
        seq = ConnectingSequence(incl, approx.map, approx.map.source, approx.copies)
        return ker, seq
    raise ReplikaError(f"unknown mutation direction {direction!r}")


def complement_chain(t_classes, hint: FDModule, seed: int = 0) -> ComplementChain:
    """The full complement chain X_0 .. X_t of a faithful almost complete
    tilting module, with its connecting sequences.

    Walks down from the hint to the Bongartz complement, then up to the
    sink complement; raises InternalCheckError if t falls outside
    [2m, 2m+1].
    """
    _check_chain_inputs(t_classes, hint, seed)
    alg = hint.alg
    bound = 2 * alg.m + 2
    x = hint
    for step in range(bound + 1):
        try:
            x, _ = mutate(t_classes, x, "down", seed, check=False)
        except BongartzEnd:
            break
        if x.is_zero:
            raise InternalCheckError("down-mutation produced the zero module")
    else:
        raise InternalCheckError("down-walk did not reach the Bongartz complement")

    members = [x]
    sequences = []
    for step in range(bound + 1):
        try:
            nxt, seq = mutate(t_classes, members[-1], "up", seed, check=False)
        except SinkEnd:
            break
        sequences.append(seq)
        members.append(nxt)
    else:
        raise InternalCheckError("up-walk did not reach the sink complement")

    t = len(members) - 1
    if not 2 * alg.m <= t <= 2 * alg.m + 1:
        raise InternalCheckError(
            f"chain length t={t} violates the bounds [{2*alg.m}, {2*alg.m+1}]")
    if not any(is_isomorphic(hint, mm, seed) for mm in members):
        raise InternalCheckError("hint complement did not reappear in the chain")
    degrees = []
    pds = []
    for mm in members:
        l, _ = degree(mm)
        degrees.append(l)
        pds.append(proj_dim(mm))
    return ComplementChain(list(t_classes), members, sequences, degrees, pds)


def brute_force_complements(t_classes, alg, field, seed: int = 0):
    """All indecomposables X with T + X tilting (independent oracle)."""
    out = []
    for x in enumerate_indecomposables(alg, field):
        if is_projective_injective(x):
            continue
        if any(is_isomorphic(x, c, seed) for c in t_classes):
            continue
        if is_tilting_summands(list(t_classes) + [x]):
            out.append(x)
    return out


def all_faithful_almost_complete(alg, field, seed: int = 0):
    """Deduplicated (T_classes, hint) pairs over all basic tilting modules.

    T runs over tilting modules minus one non-projective-injective summand;
    hints are the dropped summands.
    """
    seen = {}
    for record in enumerate_tilting(alg, field, pd_bound=None, seed=seed):
        for drop, x in enumerate(record.summands):
            if is_projective_injective(x):
                continue
            rest = [y for i, y in enumerate(record.summands) if i != drop]
            key = summand_key(rest)
            if key not in seen:
                seen[key] = (rest, x)
    return list(seen.values())


# ---------------------------------------------------------------------------
# Mutation teams, the left part, witnesses


def mutation_team_check(modules, partial: bool = False, check_maximal: bool = True,
                        seed: int = 0) -> dict:
    """Verify the Ext-dimension pattern dim Ext^s(X_j, X_i) = [i+s=j],
    the degree ladder, and (in representation-finite mode) maximality.

    With partial=True the set is allowed to be a front segment (no
    maximality, no chain-length bounds).
    """
    alg = modules[0].alg
    bound = exceptional_range(alg)
    violations = []
    for x in modules:
        if is_projective_injective(x):
            violations.append("member is projective-injective")
    t = len(modules) - 1
    for i in range(len(modules)):
        for j in range(len(modules)):
            for s in range(0, bound + 1):
                want = 1 if i + s == j else 0
                got = ext_dim(s, modules[j], modules[i])
                if got != want:
                    violations.append(
                        f"dim Ext^{s}(X_{j}, X_{i}) = {got}, expected {want}")
    degrees = [degree(x)[0] for x in modules]
    if degrees and degrees[0] != 0:
        violations.append(f"deg X_0 = {degrees[0]}, expected 0")
    for i in range(t):
        step = degrees[i + 1] - degrees[i]
        if step not in (0, 1):
            violations.append(f"degree step {step} at position {i}")
    for value in set(degrees):
        if degrees.count(value) > 2:
            violations.append(f"degree {value} occurs more than twice")
    if not partial:
        if not 2 * alg.m <= t <= 2 * alg.m + 1:
            violations.append(f"t = {t} outside [2m, 2m+1]")
        if check_maximal and alg.quiver.dynkin_type() is not None:
            extension = _team_extension(modules, seed)
            if extension is not None:
                violations.append(
                    f"extendable: an indecomposable fits at position {extension}")
    return {
        "pass": not violations,
        "violations": violations,
        "degrees": degrees,
        "t": t,
    }


def _team_extension(modules, seed=0):
    alg, fld = modules[0].alg, modules[0].field
    bound = exceptional_range(alg)
    for z in enumerate_indecomposables(alg, fld):
        if is_projective_injective(z):
            continue
        if any(is_isomorphic(z, x, seed) for x in modules):
            continue
        for pos in range(len(modules) + 1):
            extended = modules[:pos] + [z] + modules[pos:]
            good = True
            for i in range(len(extended)):
                for j in range(len(extended)):
                    if extended[i] is not z and extended[j] is not z:
                        continue
                    for s in range(0, bound + 1):
                        want = 1 if i + s == j else 0
                        if ext_dim(s, extended[j], extended[i]) != want:
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    break
            if good:
                return pos
    return None


def _left_part_data(alg, field, seed=0):
    key = ("leftpart", field.p)
    if key not in alg._cache:
        mods = [x for x in enumerate_indecomposables(alg, field)]
        pds = [proj_dim(x) for x in mods]
        k = len(mods)
        adj = [[False] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                if i != j and hom_dim(mods[i], mods[j]) > 0:
                    adj[i][j] = True
        # predecessors: reflexive-transitive closure, backwards
        preds = []
        for i in range(k):
            seen = {i}
            stack = [i]
            while stack:
                v = stack.pop()
                for u in range(k):
                    if adj[u][v] and u not in seen:
                        seen.add(u)
                        stack.append(u)
            preds.append(seen)
        in_lm = [all(pds[u] <= alg.m for u in preds[i]) for i in range(k)]
        alg._cache[key] = (mods, pds, in_lm)
    return alg._cache[key]


def in_left_part(m: FDModule, seed: int = 0) -> bool:
    """Do all predecessors of m have projective dimension at most m?"""
    alg = m.alg
    if alg.quiver.dynkin_type() is None:
        raise NotDynkinError(f"{alg.quiver.name} is not Dynkin")
    mods, pds, in_lm = _left_part_data(alg, m.field, seed)
    for i, x in enumerate(mods):
        if fingerprint(x) == fingerprint(m) and is_isomorphic(x, m, seed):
            return in_lm[i]
    raise ReplikaError("module not found among the indecomposables")


def find_mutation_witness(team, seed: int = 0):
    """A faithful almost complete tilting module W with W + X_i tilting
    for every team member, or None when the exhaustive search fails
    (which would contradict the exchange-team theorem)."""
    report = mutation_team_check(team, partial=True, seed=seed)
    if not report["pass"]:
        raise ReplikaError("team fails the mutation-team pattern: "
                           + "; ".join(report["violations"]))
    alg, fld = team[0].alg, team[0].field
    x0 = team[0]
    for record in enumerate_tilting(alg, fld, pd_bound=None, seed=seed):
        spot = next(
            (i for i, y in enumerate(record.summands) if is_isomorphic(y, x0, seed)),
            None)
        if spot is None:
            continue
        rest = [y for i, y in enumerate(record.summands) if i != spot]
        total, _ = direct_sum(rest)
        if not is_faithful(total):
            continue
        good = True
        for x in team:
            if any(is_isomorphic(x, y, seed) for y in rest):
                good = False
                break
            if not is_tilting_summands(rest + [x]):
                good = False
                break
        if good:
            return rest
    return None
