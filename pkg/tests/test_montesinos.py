import random

import pytest

from involq import (
    MontesinosParams,
    apply_word,
    build_model,
    canonical_rep,
    displacement,
    enumerate_quandle,
    isomorphic,
    lattice_step,
    mirror_params,
    predicted_component_count,
    predicted_component_sizes,
    predicted_order,
    presentation,
    rewritten_presentation,
    sigma,
    word,
    words_AB,
)
from involq.montesinos import (
    SIGMA_1,
    SIGMA_2,
    SIGMA_ID,
    _blocks,
    commuting_identity_words,
    component_symmetries,
    gamma,
    generator3_point,
    lattice_walk,
    phi,
    relation_displacement_table,
    relation_exponents,
    rho,
    tau,
    vertex_type,
    word_displacement_table,
)
from involq.words import expand_power

from conftest import montesinos_quandle


def test_params_validation():
    with pytest.raises(ValueError):
        MontesinosParams(4, 6, 1)
    with pytest.raises(ValueError):
        MontesinosParams(5, 3, 1)
    with pytest.raises(ValueError):
        MontesinosParams(0, 3, 1)
    assert MontesinosParams(3, 5, 3).w == 7
    assert MontesinosParams(1, 2, 0).w == -3


def test_words_AB():
    assert words_AB(3) == (word("212"), word("21212"))
    assert words_AB(2) == (word("2"), word("212"))
    assert words_AB(0) == (word("12122"), word("122"))


def test_words_AB_palindromes():
    # literal palindromes for e >= 2; for smaller e the expansion carries a
    # cancelling doubled letter, so compare reduced operator forms
    from involq.words import free_reduce

    for e in range(-5, 9):
        a, b = words_AB(e)
        assert free_reduce(a) == free_reduce(a[::-1])
        assert free_reduce(b) == free_reduce(b[::-1])
        if e >= 2:
            assert a == a[::-1]
            assert b == b[::-1]


def test_presentation_row_odd_odd():
    params = MontesinosParams(3, 5, 3)
    pres = presentation(params)
    a, b = words_AB(3)
    block_a, block_b = _blocks(3)
    assert pres.relations[0].lhs == (2, (1,))
    assert pres.relations[0].rhs == (2, (3,))
    assert pres.relations[1] .rhs == (1, a + block_b + block_a + (2,))
    assert pres.relations[1].lhs == (3, ())
    assert pres.relations[2].rhs == (1, b + block_a * 2)


def test_presentation_row_even_odd():
    pres = presentation(MontesinosParams(2, 5, 1))
    a, b = words_AB(1)
    block_a, block_b = _blocks(1)
    assert pres.relations[1].rhs == (1, b + block_b + block_a + (2,))
    assert pres.relations[2].rhs == (1, a + block_b + block_a)


def test_presentation_row_odd_even():
    pres = presentation(MontesinosParams(1, 2, 4))
    _, _ = words_AB(4)
    block_a, block_b = _blocks(4)
    # (q - p - 1)/2 = 0 copies of the B block, (p + 1)/2 = 1 of the A block
    assert pres.relations[1].lhs == (3, ())
    assert pres.relations[1].rhs == (3, (2,) + block_a)
    assert pres.relations[2].lhs == (1, ())


def test_lattice_step_examples():
    assert lattice_step((0, 1), 2) == (1, 1)
    assert lattice_step((0, 1), 3) == (0, 3)
    assert lattice_step((0, 1), 1) == (0, -1)


def test_lattice_step_involution():
    rng = random.Random(11)
    for _ in range(300):
        pt = (rng.randint(-30, 30), 2 * rng.randint(-30, 30) + 1)
        for g in (1, 2, 3):
            assert lattice_step(lattice_step(pt, g), g) == pt


def test_lattice_step_rejects_bad_input():
    with pytest.raises(ValueError):
        lattice_step((0, 2), 1)
    with pytest.raises(ValueError):
        lattice_step((0, 1), 4)


def test_sigma_single_letters():
    assert sigma((2,)) == SIGMA_2
    assert sigma((1,)) == SIGMA_1
    assert sigma((3,)) == SIGMA_1
    assert sigma(()) == SIGMA_ID


def test_displacement_examples():
    assert displacement((2,), "01") == (1, 0)
    for e in (-2, 0, 2, 4, 6):
        a, _ = words_AB(e)
        assert displacement(a, "01") == (e - 1, 0)
    for e in range(-3, 7):
        block_a, block_b = _blocks(e)
        assert displacement(block_a, "01") == (4 - 2 * e, 4)
        assert sigma(block_a) == SIGMA_ID
        assert displacement(block_b, "01") == (2 - 2 * e, 4)
        assert sigma(block_b) == SIGMA_ID


def test_relation_word_displacement_odd_odd_even_e():
    params = MontesinosParams(3, 5, 4)
    alpha, _ = relation_exponents(params)
    assert displacement(alpha, "01") == (params.w, 2 * params.q - 2)


def test_word_displacement_table_matches_tracing():
    for e in range(-3, 7):
        table = word_displacement_table(e)
        a, b = words_AB(e)
        block_a, block_b = _blocks(e)
        for name, w in (("A", a), ("B", b), ("232A1A", block_a), ("232B1B", block_b)):
            sig, disp = table[name]
            assert sigma(w) == sig, (e, name)
            assert displacement(w, "01") == disp, (e, name)


def test_relation_displacement_table_matches_tracing():
    for p, q in [(1, 3), (3, 5), (2, 5), (4, 7), (1, 2), (3, 4), (5, 6)]:
        for e in range(-3, 7):
            params = MontesinosParams(p, q, e)
            alpha, beta = relation_exponents(params)
            ea, eb = relation_displacement_table(params)
            assert displacement(alpha, "01") == ea, (p, q, e)
            assert displacement(beta, "01") == eb, (p, q, e)


def test_displacement_symmetries_random_words():
    rng = random.Random(5)
    for _ in range(200):
        w = tuple(rng.choice((1, 2, 3)) for _ in range(rng.randint(0, 25)))
        dx, dy = displacement(w, "01")
        assert displacement(w, "03") == (-dx, -dy)
        assert displacement(w, "11") == (-dx, dy)
        assert displacement(w, "13") == (dx, -dy)
        s = sigma(w)
        rev = displacement(w[::-1], "01")
        if s == SIGMA_ID:
            assert rev == (-dx, -dy)
        elif s == SIGMA_1:
            assert rev == (dx, dy)
        elif s == SIGMA_2:
            assert rev == (dx, -dy)
        else:
            assert rev == (-dx, dy)


def test_canonical_rep_example():
    params = MontesinosParams(3, 5, 3)
    q, wa = params.q, abs(params.w)
    start = (-2 * q * wa, -8 * q * wa + 1)
    assert canonical_rep(start, params, 1) == (0, 1)
    assert canonical_rep((0, 1), params, 1) == (0, 1)


def test_canonical_rep_idempotent():
    rng = random.Random(3)
    for p, q, e in [(3, 5, 3), (3, 4, 4), (1, 2, 0), (1, 3, -2)]:
        params = MontesinosParams(p, q, e)
        comps = (1, 2) if q % 2 else (1, 2, 3)
        for _ in range(200):
            pt = (rng.randint(-50, 50), 2 * rng.randint(-50, 50) + 1)
            for c in comps:
                rep = canonical_rep(pt, params, c)
                assert canonical_rep(rep, params, c) == rep


def test_canonical_rep_respects_orbits():
    # stepping around the lattice and canonicalizing commutes with
    # canonicalizing first
    rng = random.Random(9)
    params = MontesinosParams(3, 4, 4)
    for _ in range(100):
        pt = (rng.randint(-20, 20), 2 * rng.randint(-20, 20) + 1)
        for c in (1, 2, 3):
            rep = canonical_rep(pt, params, c)
            for g in (1, 2, 3):
                a = canonical_rep(lattice_step(pt, g), params, c)
                b = canonical_rep(lattice_step(rep, g), params, c)
                assert a == b


def test_component3_only_when_q_even():
    with pytest.raises(ValueError):
        canonical_rep((0, 1), MontesinosParams(3, 5, 3), 3)
    with pytest.raises(ValueError):
        component_symmetries(MontesinosParams(3, 5, 3), 3)


def test_transform_validation():
    with pytest.raises(ValueError):
        rho(0, 1)
    with pytest.raises(ValueError):
        tau(1, 4)
    with pytest.raises(ValueError):
        tau(0, 2)
    with pytest.raises(ValueError):
        phi(2)
    with pytest.raises(ValueError):
        gamma(2, 1)


def test_transforms_are_label_preserving_automorphisms():
    rng = random.Random(17)
    transforms = [rho(3, -4), tau(-6, 8), phi(5), gamma(8, -3)]
    for t in transforms:
        for _ in range(100):
            pt = (rng.randint(-25, 25), 2 * rng.randint(-25, 25) + 1)
            for g in (1, 2, 3):
                assert t.apply(lattice_step(pt, g)) == lattice_step(t.apply(pt), g)


def test_canonical_rep_invariant_under_component_groups():
    # the arithmetic reduction must agree with the group quotient: applying
    # any group generator before reducing cannot change the representative
    rng = random.Random(23)
    for p, q, e in [(3, 5, 3), (2, 5, 0), (3, 4, 4), (1, 2, 0), (1, 6, -1)]:
        params = MontesinosParams(p, q, e)
        comps = (1, 2) if q % 2 else (1, 2, 3)
        for c in comps:
            for t in component_symmetries(params, c):
                for _ in range(60):
                    pt = (rng.randint(-40, 40), 2 * rng.randint(-40, 40) + 1)
                    assert canonical_rep(t.apply(pt), params, c) == canonical_rep(pt, params, c)


def test_generator3_location_odd_q():
    params = MontesinosParams(3, 5, 3)
    assert generator3_point(params) == (7, 9)
    assert generator3_point(MontesinosParams(2, 5, 0)) == (7, 9)


def test_build_model_orders():
    for p, q, e in [(3, 5, 3), (3, 4, 4), (1, 2, 0), (1, 3, 1), (2, 7, -1)]:
        params = MontesinosParams(p, q, e)
        m = build_model(params)
        assert m.n == predicted_order(params)
        sizes = sorted((list(m.comp_ids).count(c) for c in set(m.comp_ids)), reverse=True)
        assert tuple(sizes) == predicted_component_sizes(params)


def test_model_isomorphic_to_enumeration():
    for p, q, e in [(3, 5, 3), (3, 4, 4), (1, 2, 0)]:
        params = MontesinosParams(p, q, e)
        assert isomorphic(montesinos_quandle(p, q, e), build_model(params)) is not None


def test_component3_is_label_traded_component1():
    # swap edge labels 1 and 3 on the first component and look for a
    # label-respecting bijection onto the third
    for p, q, e in [(3, 4, 4), (1, 2, 0)]:
        params = MontesinosParams(p, q, e)
        m = build_model(params)
        rows = m.table.tolist()
        e1, e2, e3 = m.gen_elements
        c1 = [x for x in range(m.n) if m.comp_ids[x] == m.comp_ids[e1]]
        c3 = [x for x in range(m.n) if m.comp_ids[x] == m.comp_ids[e3]]
        assert len(c1) == len(c3)
        swapped = {e1: e3, e2: e2, e3: e1}

        def try_root(root):
            img = {c1[0]: root}
            stack = [c1[0]]
            while stack:
                x = stack.pop()
                for src, dst in swapped.items():
                    y = rows[x][src]
                    iy = rows[img[x]][dst]
                    if y in img:
                        if img[y] != iy:
                            return False
                    else:
                        img[y] = iy
                        stack.append(y)
            return len(set(img.values())) == len(c1)

        assert any(try_root(r) for r in c3)


def test_epsilon_relation_closes_with_either_sign():
    # the half-turn exponent in the epsilon family closes in the model with
    # either sign: the variants differ by a full vertical period
    for p, q, e in [(1, 2, 0), (3, 4, 4)]:
        params = MontesinosParams(p, q, e)
        m = build_model(params)
        wa = abs(params.w)
        g1 = m.gen_elements[0]
        for i in range(1, (wa - 1) // 2 + 1):
            for half in (expand_power((1, 3), q // 2), expand_power((3, 1), q // 2)):
                v = expand_power((2, 3), i) + half + expand_power((2, 3), wa - i) + (3,)
                assert apply_word(m, g1, v) == g1


def test_rewritten_presentation_words():
    params = MontesinosParams(3, 5, 3)
    pres = rewritten_presentation(params)
    mu = pres.relations[0]
    assert mu.lhs == (3, ())
    assert mu.rhs == (1, expand_power((2, 1), 7) + expand_power((3, 1), 2))
    kappa = pres.relations[-8]
    assert kappa.rhs == (2, expand_power((1, 2), 14))


def test_rewritten_relation_count_odd_q():
    for p, q, e in [(3, 5, 3), (1, 3, 1), (2, 7, 0)]:
        params = MontesinosParams(p, q, e)
        wa = abs(params.w)
        pres = rewritten_presentation(params)
        assert len(pres.relations) == wa + 1 + wa * q + wa + 2


def test_rewritten_enumerates_to_same_quandle():
    for p, q, e in [(1, 3, 1), (1, 2, 0)]:
        params = MontesinosParams(p, q, e)
        r = enumerate_quandle(rewritten_presentation(params))
        assert isomorphic(montesinos_quandle(p, q, e), r) is not None


def test_cross_validation_edge_cases():
    # |w| = 1 empties several index families of the rewritten presentation;
    # negative w and e exercise the reversed power expansions
    for p, q, e in [(5, 6, 2), (1, 6, 1), (1, 4, 1), (1, 9, 1), (1, 2, -3), (3, 4, -2)]:
        params = MontesinosParams(p, q, e)
        enum = enumerate_quandle(presentation(params))
        model = build_model(params)
        rewritten = enumerate_quandle(rewritten_presentation(params))
        assert enum.n == model.n == rewritten.n == predicted_order(params)
        assert isomorphic(enum, model) is not None
        assert isomorphic(enum, rewritten) is not None


def test_predictions():
    assert predicted_order(MontesinosParams(3, 5, 3)) == 84
    assert predicted_component_sizes(MontesinosParams(3, 5, 3)) == (70, 14)
    assert predicted_order(MontesinosParams(3, 4, 4)) == 90
    assert predicted_component_sizes(MontesinosParams(3, 4, 4)) == (36, 36, 18)
    assert predicted_order(MontesinosParams(1, 2, 0)) == 18
    assert predicted_component_sizes(MontesinosParams(1, 2, 0)) == (6, 6, 6)
    assert predicted_component_count(MontesinosParams(3, 5, 3)) == 2
    assert predicted_component_count(MontesinosParams(1, 2, 0)) == 3


def test_mirror_params():
    assert mirror_params(MontesinosParams(3, 5, 3)) == MontesinosParams(2, 5, 0)
    for p, q, e in [(3, 5, 3), (1, 2, 0), (4, 7, -2)]:
        params = MontesinosParams(p, q, e)
        assert mirror_params(mirror_params(params)) == params


def test_mirror_quandles_isomorphic():
    q1 = montesinos_quandle(1, 3, 1)
    q2 = montesinos_quandle(2, 3, 2)
    assert isomorphic(q1, q2) is not None


def test_commuting_identity_in_enumerated_quandles():
    for p, q, e in [(3, 5, 3), (3, 4, 4), (1, 3, -1)]:
        quandle = montesinos_quandle(p, q, e)
        left, right = commuting_identity_words(e)
        assert all(
            apply_word(quandle, x, left) == apply_word(quandle, x, right)
            for x in range(quandle.n)
        )


def test_vertex_type_and_walk():
    assert vertex_type((0, 1)) == "01"
    assert vertex_type((3, -1)) == "13"
    assert lattice_walk((0, 1), word("22")) == (0, 1)
