import random

import pytest

from towercalc.errors import ConsistencyError
from towercalc.expansion import (ExpansionResult, MaxwellPair, expand,
                                 expansion_commutes_with_maxwell,
                                 iterated_maxwell_check, lemma34_classify,
                                 maxwell_map, membership_filter,
                                 tower_candidates)
from towercalc.forms import Form
from towercalc.indices import in_weighted_l2
from towercalc.ring import QQ, qq
from towercalc.towers import TowerIndex


def make_pair(ctx, q, parts):
    """Assemble a static pair from (side, index, coeff) triples."""
    n = ctx.n
    e = Form.zero(n, q)
    h = Form.zero(n, q + 1)
    for side, idx, c in parts:
        if side == "e":
            e = e + ctx.d_form(q, idx).scale(qq(c))
        else:
            h = h + ctx.r_form(q + 1, idx).scale(qq(c))
    return MaxwellPair(e, h)


def coeff_map(side):
    return {i: c for i, c in side.coeffs.items()}


def test_pair_validation():
    with pytest.raises(ValueError):
        MaxwellPair(Form.zero(3, 1), Form.zero(3, 3))   # ranks must be (q, q+1)
    with pytest.raises(ValueError):
        MaxwellPair(Form.zero(3, 1), Form.zero(5, 2))   # same dimension
    pair = MaxwellPair(Form.zero(3, 1), Form.zero(3, 2))
    assert MaxwellPair.from_obj(pair.to_obj()).e == pair.e


def test_maxwell_map_and_nilpotence(ctx3):
    idx = TowerIndex(1, 2, 1, 1)
    pair = make_pair(ctx3, 1, [("e", idx, "1")])
    checked = iterated_maxwell_check(pair, 3)
    assert checked["passed"]
    assert checked["first_zero_power"] == 3   # floor-2 member dies after 3 steps
    m1 = maxwell_map(pair)
    assert m1.e.q == 1 and m1.h.q == 2
    # floor-2 member maps down to floor 1, then floor 0, then to zero
    assert not m1.h.is_zero()
    m2 = maxwell_map(m1)
    assert not m2.e.is_zero() or not m2.h.is_zero()
    m3 = maxwell_map(m2)
    assert m3.e.is_zero() and m3.h.is_zero()


def test_candidates_are_deterministic_and_complete(ctx3):
    a = tower_candidates(ctx3, 1, "D", 2, 3)
    b = tower_candidates(ctx3, 1, "D", 2, 3)
    assert [i for i, _ in a] == [i for i, _ in b]
    degs = {f.homogeneous_degree() for _, f in a}
    assert degs == {2}
    # growing floor-0 sigma=2 members and floor-1 sigma=1 members both occur
    ks = {(i.sign, i.k, i.sigma) for i, _ in a}
    assert (1, 0, 2) in ks and (1, 1, 1) in ks and (1, 2, 0) in ks
    assert (-1, 2, 3) not in ks   # decaying degree 2 needs k = sigma + n + 2 > 3


def test_round_trip_single_member(ctx3):
    idx = TowerIndex(1, 1, 1, 2)
    pair = make_pair(ctx3, 1, [("e", idx, "3/7")])
    out = expand(pair, 2, ctx3)
    assert out.exact
    assert coeff_map(out.e_side) == {idx: QQ(3, 7)}
    assert coeff_map(out.h_side) == {}
    back = out.reconstruct(ctx3)
    assert back.e == pair.e and back.h == pair.h


def test_round_trip_mixture_both_sides(ctx3):
    parts = [("e", TowerIndex(1, 0, 1, 1), "2"),
             ("e", TowerIndex(-1, 1, 0, 1), "-1/3"),
             ("h", TowerIndex(1, 1, 0, 1), "5/2"),
             ("h", TowerIndex(-1, 2, 1, 4), "7")]
    pair = make_pair(ctx3, 1, parts)
    out = expand(pair, 3, ctx3)
    assert out.exact
    want_e = {i: qq(c) for s, i, c in parts if s == "e"}
    want_h = {i: qq(c) for s, i, c in parts if s == "h"}
    assert coeff_map(out.e_side) == want_e
    assert coeff_map(out.h_side) == want_h


def test_random_rational_mixtures_recover_exactly(ctx3):
    rng = random.Random(7)
    for trial in range(10):
        q = rng.choice([0, 1, 2])
        parts = []
        for _ in range(rng.randint(1, 4)):
            side = rng.choice(["e", "h"])
            sign = rng.choice([1, -1])
            k = rng.randint(0, 2)
            sigma = rng.randint(0, 2)
            rank = q if side == "e" else q + 1
            line = "D" if side == "e" else "R"
            from towercalc.indices import multiplicity
            count = multiplicity(3, rank, line, sigma, k)
            if count == 0:
                continue
            idx = TowerIndex(sign, k, sigma, rng.randint(1, count))
            if side == "e" and ctx3.d_form(q, idx) is None:
                continue
            if side == "h" and ctx3.r_form(q + 1, idx) is None:
                continue
            c = QQ(rng.randint(-9, 9), rng.randint(1, 9))
            if c == 0:
                continue
            parts.append((side, idx, c))
        if not parts:
            continue
        pair = make_pair(ctx3, q, parts)
        out = expand(pair, 3, ctx3)
        assert out.exact, (trial, q, parts)
        back = out.reconstruct(ctx3)
        assert back.e == pair.e and back.h == pair.h, (trial, q, parts)


def test_zero_coefficients_are_pruned(ctx3):
    idx = TowerIndex(1, 0, 0, 1)
    pair = make_pair(ctx3, 1, [("e", idx, "1")])
    out = expand(pair, 2, ctx3)
    assert all(c != 0 for c in out.e_side.coeffs.values())
    assert out.h_side.coeffs == {}


def test_hat_slot_reports_none_when_absent(ctx3):
    # q=2 family at even height: the E-side hat slot does not exist, the
    # H-side one does.  Absent slots report None, never a zero coefficient.
    pair = make_pair(ctx3, 2, [("e", TowerIndex(1, 0, 0, 1), "1")])
    out = expand(pair, 2, ctx3)
    assert out.e_side.hat_descriptor is None
    assert out.e_side.hat_coeff is None
    assert not out.h_side.hat_descriptor.is_zero
    assert out.h_side.hat_coeff == 0


def test_hat_slot_participates_when_needed(ctx3):
    # the height-2 scalar-family hat occurs on the E side at rank 0
    desc_pair = expand(make_pair(ctx3, 0, [("h", TowerIndex(-1, 1, 0, 1), "4")]),
                       2, ctx3)
    assert desc_pair.exact


def test_non_static_pair_rejected(ctx3):
    n = 3
    from towercalc.ring import RadialRingElement
    x1 = RadialRingElement.variable(n, 1)
    e = Form.dx(n, (1,), x1)                   # div = 1, not divergence-free
    h = Form.zero(n, 2)
    with pytest.raises(ValueError):
        expand(MaxwellPair(e, h), 2, ctx3)
    # the same call without the static check reports an inexact expansion
    out = expand(MaxwellPair(e, h), 2, ctx3, check_static=False)
    assert not out.exact


def test_height_hypothesis_enforced(ctx3):
    # a floor-3 member needs 4 applications of the mixed map to die, so it
    # is not a height-3 pair; at height 4 it expands exactly
    pair = make_pair(ctx3, 1, [("e", TowerIndex(1, 3, 0, 1), "1")])
    with pytest.raises(ValueError):
        expand(pair, 3, ctx3)
    out = expand(pair, 4, ctx3)
    assert out.exact
    assert coeff_map(out.e_side) == {TowerIndex(1, 3, 0, 1): qq(1)}


def test_expansion_serialization(ctx3):
    pair = make_pair(ctx3, 1, [("e", TowerIndex(1, 1, 1, 2), "3/7")])
    out = expand(pair, 2, ctx3)
    obj = out.to_obj()
    assert obj["kind"] == "expansion"
    assert obj["exact"] is True
    assert obj["e"]["residual_zero"] is True
    rows = obj["e"]["coeffs"]
    assert rows == [{"sign": "+", "k": 1, "sigma": 1, "m": 2, "coeff": "3/7"}]
    assert obj["h"]["coeffs"] == []
    assert obj["e"]["hat"]["kind"] == "D_hat"


def test_commutation_with_maxwell(ctx3):
    parts = [("e", TowerIndex(1, 2, 0, 1), "2"),
             ("h", TowerIndex(1, 2, 1, 3), "-1/2")]
    pair = make_pair(ctx3, 1, parts)
    report = expansion_commutes_with_maxwell(pair, 3, ctx3)
    assert report["passed"], report["failures"]


def test_membership_filter_flags_each_side(ctx3):
    parts = [("e", TowerIndex(1, 0, 1, 1), "2"),        # degree 1, never in L2
             ("h", TowerIndex(-1, 0, 2, 1), "1")]       # degree -5
    pair = make_pair(ctx3, 1, parts)
    out = expand(pair, 2, ctx3)
    verdict = membership_filter(out, qq(0))
    assert not verdict["passed"]
    assert TowerIndex(1, 0, 1, 1) in verdict["e_offending"]
    assert verdict["h_offending"] == []
    # at a harsher weight the decaying member is excluded as well
    # (degree -5 stays integrable only while s < 7/2)
    harsh = membership_filter(out, qq(4))
    assert TowerIndex(-1, 0, 2, 1) in harsh["h_offending"]


def test_membership_filter_matches_pointwise_check(ctx3):
    parts = [("e", TowerIndex(-1, 1, 0, 2), "1"),
             ("h", TowerIndex(-1, 0, 1, 1), "-2")]
    pair = make_pair(ctx3, 1, parts)
    out = expand(pair, 2, ctx3)
    for s in ["-5/4", "0", "7/4", "3"]:
        verdict = membership_filter(out, qq(s))
        for idx, c in out.e_side.coeffs.items():
            flagged = idx in verdict["e_offending"]
            assert flagged == (c != 0 and not in_weighted_l2(idx, qq(s), 3))
        for idx, c in out.h_side.coeffs.items():
            flagged = idx in verdict["h_offending"]
            assert flagged == (c != 0 and not in_weighted_l2(idx, qq(s), 3))


def test_classify_both_branch(ctx3):
    # decaying floor-2 div-free AND rot-free member: classification "both"
    e = ctx3.d_form(1, TowerIndex(-1, 0, 0, 1))
    assert e is not None
    out = lemma34_classify(e, qq(0), ctx3)
    assert out["class"] == "both"
    assert out["rot_integrable"] and out["div_integrable"]
    assert all(i.k > 0 for i in out["indices"])


def test_classify_div_only_branch(ctx3):
    e = ctx3.d_form(1, TowerIndex(-1, 2, 0, 1))      # div-free, rot = R_1 != 0
    out = lemma34_classify(e, qq(-1), ctx3)
    assert out["class"] in {"div_only", "both"}
    if out["class"] == "div_only":
        assert out["div_integrable"] and not out["rot_integrable"]


def test_classify_rot_only_branch(ctx3):
    h = ctx3.r_form(2, TowerIndex(-1, 2, 1, 1))      # rot-free, div = D_1 != 0
    out = lemma34_classify(h, qq(-1), ctx3)
    assert out["class"] in {"rot_only", "both"}


def test_classify_unclassified_branch(ctx3):
    # a rank-1 mixture whose rot and div are both nonzero and growing gains
    # nothing from one extra weight
    f = ctx3.d_form(1, TowerIndex(1, 2, 0, 1)) + \
        ctx3.r_form(1, TowerIndex(1, 2, 0, 1))
    assert not f.rot().is_zero() and not f.div().is_zero()
    out = lemma34_classify(f, qq(4), ctx3)
    assert out["class"] == "unclassified"
    assert not out["rot_integrable"] and not out["div_integrable"]
