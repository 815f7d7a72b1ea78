import numpy as np

from replika.approx import (
    add_classes,
    in_cogen,
    in_gen,
    is_faithful,
    minimal_left_approx,
    minimal_right_approx,
)
from replika.decompose import is_isomorphic
from replika.linalg import rank
from replika.modules import (
    cokernel,
    direct_sum,
    hom_basis,
    hom_dim,
    regular_module,
    standard_module,
)


def P(alg, field, v):
    return standard_module(alg, field, "projective", v)


def S(alg, field, v):
    return standard_module(alg, field, "simple", v)


def test_split_case(a3_alg0, field):
    p1 = P(a3_alg0, field, 0)
    t = [p1, P(a3_alg0, field, 2)]
    approx = minimal_left_approx(p1, t)
    assert approx.map.is_injective
    assert approx.map.target.dim == p1.dim
    assert is_isomorphic(approx.map.target, p1)


def test_zero_hom_case(a3_alg0, field):
    # Hom(P_1, S_3 + S_2) = 0 over the linear A_3 (P_1 has simple top S_1)
    p1 = P(a3_alg0, field, 0)
    t = [S(a3_alg0, field, 2)]
    assert hom_dim(p1, t[0]) == 0
    approx = minimal_left_approx(p1, t)
    assert approx.map.target.is_zero
    assert approx.copies == []


def test_radical_inclusion_example(a3_alg0, field):
    # T = P_1 + P_3, X = P_2: the minimal left approximation is the
    # radical inclusion P_2 -> P_1 with cokernel S_1
    p1, p3 = P(a3_alg0, field, 0), P(a3_alg0, field, 2)
    p2 = P(a3_alg0, field, 1)
    approx = minimal_left_approx(p2, [p1, p3])
    assert approx.map.is_injective
    assert is_isomorphic(approx.map.target, p1)
    coker, _ = cokernel(approx.map)
    assert is_isomorphic(coker, S(a3_alg0, field, 0))


def test_minimality_no_droppable_summand(a3_alg1, field):
    x = S(a3_alg1, field, 0)
    t = [P(a3_alg1, field, v) for v in range(6)]
    approx = minimal_left_approx(x, t)
    # surjectivity of the induced Hom map for every class
    p = field.p
    for u, cls in enumerate(approx.classes):
        want = hom_dim(x, cls)
        if want == 0:
            continue
        comps = []
        pos = 0
        for j in approx.copies:
            block = approx.map.matrix[:, pos: pos + approx.classes[j].dim]
            for g in hom_basis(approx.classes[j], cls):
                comps.append(((block @ g.matrix) % p).reshape(-1))
            pos += approx.classes[j].dim
        assert comps and rank(np.vstack(comps), p) == want


def test_right_approx_cover_like(a3_alg0, field):
    s1 = S(a3_alg0, field, 0)
    t = [P(a3_alg0, field, v) for v in range(3)]
    approx = minimal_right_approx(s1, t)
    assert approx.map.is_surjective
    assert is_isomorphic(approx.map.source, P(a3_alg0, field, 0))


def test_faithful(a3_alg1, field):
    assert is_faithful(regular_module(a3_alg1, field))
    assert not is_faithful(S(a3_alg1, field, 0))


def test_in_gen_examples(a3_alg0, field):
    p1 = P(a3_alg0, field, 0)
    s1 = S(a3_alg0, field, 0)
    assert in_gen([p1], s1)
    assert not in_gen([P(a3_alg0, field, 1)], s1)
    assert in_cogen([standard_module(a3_alg0, field, "injective", 0)], s1)


def test_add_classes_dedup(a3_alg0, field):
    p1 = P(a3_alg0, field, 0)
    total, _ = direct_sum([p1, p1, P(a3_alg0, field, 1)])
    classes = add_classes(total)
    assert len(classes) == 2
