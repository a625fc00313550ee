"""Cover invariants, base change, and the built-in families."""

import random

import pytest

from wildram.additive import AdditiveOp
from wildram.cover import (
    CoverSpec,
    FamilyItem,
    additive_characters,
    base_change,
    character_levels,
    conductor,
    cover_degree,
    cover_genus,
    family_build,
    normalized_witt_rhs,
    reduce_mod_wp,
    splits_at,
    splits_everywhere,
    tower_compose,
    upper_filtration,
)
from wildram.errors import BadParameters, ZeroCover
from wildram.field import FqPoly, make_field, reduce_pth_powers
from wildram.rayclass import ray_class_invariants
from wildram.witt import witt2_sub


def _mono(ctx, pairs):
    terms = []
    for exp, c in pairs:
        el = ctx.elem(c) if isinstance(c, (list, tuple)) else ctx.elem([c])
        if not el.is_zero():
            terms.append((exp, el))
    return FqPoly(ctx, tuple(sorted(terms)))


def _wp_cover(ctx, rhs, label=""):
    return CoverSpec(ctx, ("witt", 1), [rhs], label=label)


def test_reduce_mod_wp_identity():
    rng = random.Random(51)
    for p, e in [(2, 2), (3, 1), (5, 1)]:
        ctx = make_field(p, e)
        for _ in range(30):
            terms = []
            for exp in rng.sample(range(1, 30), 4):
                c = ctx.elem([rng.randrange(p) for _ in range(e)])
                if not c.is_zero():
                    terms.append((exp, c))
            f = FqPoly(ctx, tuple(terms))
            red = reduce_mod_wp(f)
            assert all(exp % p for exp, _ in red.poly.terms)
            back = red.poly + FqPoly(ctx, ((0, red.constant),)) \
                + red.witness.pth_power() - red.witness
            assert back == f


def test_hermitian_cover():
    # y^5 + y = x^6 over F_25 has genus q(q-1)/2 = 10 and the relative
    # trace as its split map, so every rational place splits
    ctx = make_field(5, 2)
    op = AdditiveOp(ctx, [ctx.one, ctx.one])
    cov = CoverSpec(ctx, ("additive", op), [_mono(ctx, [(6, 1)])])
    assert cover_degree(cov) == 5
    assert conductor(cov) == 7
    assert character_levels(cov) == [(7, 5)]
    assert cover_genus(cov) == 10
    assert len(list(additive_characters(cov))) == 1
    assert upper_filtration(cov).segments == ((6, 5),)
    all_split, hits, total = splits_everywhere(cov)
    assert all_split and hits == total == 25


def test_full_trace_cover():
    # y^25 - y = x^26 over F_25: six rank-one characters spanning a
    # rank-2 group, every one with conductor 27
    ctx = make_field(5, 2)
    op = AdditiveOp(ctx, [-ctx.one, ctx.zero, ctx.one])
    cov = CoverSpec(ctx, ("additive", op), [_mono(ctx, [(26, 1)])])
    assert cover_degree(cov) == 25
    assert character_levels(cov) == [(27, 5), (27, 5)]
    assert cover_genus(cov) == 300
    assert len(list(additive_characters(cov))) == 6
    assert upper_filtration(cov).segments == ((26, 25),)
    # x^26 = x^2 on units never lands in the zero image of F^2 - 1
    all_split, hits, total = splits_everywhere(cov)
    assert (all_split, hits, total) == (False, 1, 25)


def test_cubic_base_change():
    # y^2 - y = x^3 over F_2 pulled back along x = z^2 - z
    ctx = make_field(2, 1)
    cov = _wp_cover(ctx, _mono(ctx, [(3, 1)]), label="cubic")
    assert conductor(cov) == 4
    assert cover_genus(cov) == 1
    S = AdditiveOp(ctx, [ctx.one, ctx.one])
    pulled = base_change(cov, S)
    assert {exp for exp, _ in pulled.rhs[0].terms} == {3, 4, 5, 6}
    red = reduce_mod_wp(pulled.rhs[0])
    assert red.poly.terms == ((1, ctx.one), (5, ctx.one))
    assert conductor(pulled) == 6
    assert cover_genus(pulled) == 2
    assert pulled.label.endswith("pullback")


def test_base_change_degree_law():
    rng = random.Random(52)
    count = 0
    while count < 20:
        p, e = rng.choice([(2, 1), (2, 2), (3, 1)])
        ctx = make_field(p, e)
        deg = rng.choice([d for d in range(2, 8) if d % p])
        lead = ctx.elem([rng.randrange(p) for _ in range(e)])
        if lead.is_zero():
            continue
        cov = _wp_cover(ctx, FqPoly(ctx, ((deg, lead),)))
        sdeg = rng.randrange(1, 3)
        coeffs = [ctx.elem([rng.randrange(p) for _ in range(e)])
                  for _ in range(sdeg + 1)]
        if coeffs[-1].is_zero():
            continue
        S = AdditiveOp(ctx, coeffs)
        if not S.separable:
            continue
        try:
            g0 = cover_genus(cov)
            g1 = cover_genus(base_change(cov, S))
        except ZeroCover:
            continue
        assert g1 == p ** S.f_degree * g0
        count += 1


def test_normalized_witt_rhs_is_exact_for_pairs():
    rng = random.Random(53)
    ctx = make_field(3, 1)
    zero = FqPoly.zero(ctx)
    for _ in range(25):
        f0 = _mono(ctx, [(rng.randrange(1, 12), rng.randrange(3)),
                         (9, rng.randrange(3))])
        f1 = _mono(ctx, [(rng.randrange(1, 12), rng.randrange(3))])
        cov = CoverSpec(ctx, ("witt", 2), [f0, f1])
        n0, n1 = normalized_witt_rhs(cov)
        assert all(exp % 3 or exp == 0 for exp, _ in n0.terms)
        assert all(exp % 3 or exp == 0 for exp, _ in n1.terms)
        # the rewrite differs from the input by Witt wp images only:
        # one length-2 wp pair for the leading witness, then a plain
        # second-coordinate wp which adds without carries
        _, _, wit0 = reduce_pth_powers(f0)
        wp_pair = witt2_sub((wit0.pth_power(), zero), (wit0, zero))
        corrected = witt2_sub((f0, f1), wp_pair)
        _, _, wit1 = reduce_pth_powers(corrected[1])
        assert n0 == corrected[0]
        assert n1 == corrected[1] - wit1.pth_power() + wit1


def test_witt_pair_conductor():
    # conductor of a length-2 vector doubles through the carry exponent
    ctx = make_field(2, 1)
    cov = CoverSpec(ctx, ("witt", 2),
                    [_mono(ctx, [(3, 1)]), FqPoly.zero(ctx)])
    assert character_levels(cov) == [(4, 2), (7, 2)]
    assert conductor(cov) == 7


def test_family_jump2_even_small():
    ctx = make_field(3, 2)
    fam = family_build(ctx, "jump2-even")
    assert fam["notes"]["m2"] == 13
    assert fam["notes"]["splits_at_rational_places"]
    tower = tower_compose(fam["items"])
    assert tower["degree"] == 729
    assert tower["genus"] == 3864
    assert tower["levels"] == [(5, 3, 3), (11, 9, 27), (12, 9, 243),
                               (13, 3, 729)]


def test_family_jump2_odd_small():
    expected = {
        (2, 1): (7, 15, 8, [(4, 2, 2), (6, 2, 4), (7, 2, 8)]),
        (3, 1): (13, 1257, 243,
                 [(5, 3, 3), (6, 3, 9), (11, 3, 27), (12, 3, 81),
                  (13, 3, 243)]),
        (2, 3): (11, 526, 128, [(6, 8, 8), (10, 8, 64), (11, 2, 128)]),
    }
    for (p, e), (m2, genus, degree, levels) in expected.items():
        ctx = make_field(p, e)
        fam = family_build(ctx, "jump2-odd")
        assert fam["notes"]["m2"] == m2
        assert fam["notes"]["splits_at_rational_places"]
        tower = tower_compose(fam["items"])
        assert tower["degree"] == degree
        assert tower["genus"] == genus
        assert tower["levels"] == levels


def test_family_towers_sit_inside_ray_class_groups():
    # cumulative tower degree at each conductor is bounded by the ray
    # class group order there, with equality at the first conductor
    for p, e, kind in [(2, 1, "jump2-odd"), (3, 1, "jump2-odd"),
                       (3, 2, "jump2-even")]:
        ctx = make_field(p, e)
        tower = tower_compose(family_build(ctx, kind)["items"])
        first = True
        for cond, _, cum in tower["levels"]:
            inv = ray_class_invariants(ctx, cond, order_only=True)
            assert cum <= p ** inv["order_exp"]
            if first:
                assert cum == p ** inv["order_exp"]
                first = False


def test_family_exponent_pn():
    ctx = make_field(3, 2)
    fam = family_build(ctx, "exponent-pn", witt_len=3)
    tower = tower_compose(fam["items"])
    assert tower["levels"] == [(5, 3, 3), (13, 3, 9), (37, 3, 27)]
    assert fam["notes"]["splits_at_rational_places"]


def test_family_table_full_shape():
    ctx = make_field(5, 4)
    fam = family_build(ctx, "table-full")
    assert len(fam["items"]) == 16
    assert fam["notes"]["m2"] == 131
    pair_conductors = [max(m for m, _ in it.levels())
                       for it in fam["items"] if it.marginal]
    assert pair_conductors == [131, 131]


def test_splits_at_and_everywhere():
    ctx = make_field(2, 1)
    cov = _wp_cover(ctx, _mono(ctx, [(3, 1)]))
    # x = 0 gives y^2 - y = 0, split; x = 1 gives y^2 - y = 1, inert
    assert splits_at(cov, ctx.zero)
    assert not splits_at(cov, ctx.one)
    all_split, hits, total = splits_everywhere(cov)
    assert (all_split, hits, total) == (False, 1, 2)


def test_zero_cover_raises():
    ctx = make_field(2, 1)
    # y^2 - y = x^2 + x is wp of x, so nothing ramifies
    cov = _wp_cover(ctx, _mono(ctx, [(2, 1), (1, 1)]))
    with pytest.raises(ZeroCover):
        character_levels(cov)


def test_family_kind_validation():
    ctx = make_field(3, 1)
    with pytest.raises(BadParameters):
        family_build(ctx, "jump2-even")  # needs even e
    with pytest.raises(BadParameters):
        family_build(make_field(3, 2), "jump2-odd")
    with pytest.raises(BadParameters):
        family_build(ctx, "no-such-kind")


def test_cover_json_round_trip():
    ctx = make_field(3, 2)
    op = AdditiveOp(ctx, [-1, 0, 1])
    cov = CoverSpec(ctx, ("additive", op), [_mono(ctx, [(4, 1)])],
                    label="anchor")
    back = CoverSpec.from_json(cov.to_json())
    assert back.kind == "additive" and back.op == op
    assert back.rhs == cov.rhs and back.label == "anchor"
    pair = CoverSpec(ctx, ("witt", 2),
                     [_mono(ctx, [(4, 1)]), FqPoly.zero(ctx)])
    again = CoverSpec.from_json(pair.to_json())
    assert again.kind == "witt" and again.op == 2
    assert again.rhs == pair.rhs
