import random

import pytest

from diagrams import oriented_products
from oracles import jones_from_homfly, tait_jones
from thompson_homfly.forest import IDENTITY, X0, X1, Forest, GroupElement, parse_tree, random_tree
from thompson_homfly.homfly import homfly, tangle_inner
from thompson_homfly.laurent import DELTA, ONE
from thompson_homfly.signs import NotOriented, first_sign_mismatch, insert_caret, leaf_signs
from thompson_homfly.tangles import (
    BoundaryMismatch,
    DiagramError,
    build_link,
    build_unoriented_link,
    cap_tangle,
    caret_piece,
    check_diagram,
    close,
    component_count,
    component_count_unionfind,
    conjugate_by_crossing,
    crossing_tangle,
    euler_ok,
    from_dict,
    identity,
    object_signs,
    oriented_code,
    phi_of_forest,
    random_tangle_family,
    stack,
    star,
    to_dict,
    unoriented_code,
)


def structurally_equal(t1, t2):
    return (dict(t1.adj), t1.signs, t1.bottom, t1.top, t1.loops) == (
        dict(t2.adj),
        t2.signs,
        t2.bottom,
        t2.top,
        t2.loops,
    )


def test_object_signs():
    assert object_signs("+") == "+"
    assert object_signs("+-") == "++-"
    assert object_signs("+-+") == "++--+"


@pytest.mark.parametrize("convention", ["standard", "mirror"])
def test_caret_piece_shape(convention):
    for sigma in ["+", "+-", "+--", "+-+", "+-+-"]:
        m = len(sigma)
        for i in range(1, m + 1):
            t = caret_piece(m, i, sigma, convention)
            assert t.crossings == 1 and t.oriented
            assert len(t.bottom) == 2 * m - 1 and len(t.top) == 2 * m + 1
            assert t.bottom == object_signs(sigma)
            assert t.top == object_signs(insert_caret(sigma, i))
            check_diagram(t)


def test_caret_piece_bad_position():
    with pytest.raises(IndexError):
        caret_piece(2, 3, "+-")


def test_star_is_an_involution(rng):
    for g in rng.sample(oriented_products(), 30):
        t = phi_of_forest(g.plus, "+")
        assert structurally_equal(star(star(t)), t)
        assert star(t).bottom == t.top and star(t).top == t.bottom


def test_star_is_an_anti_homomorphism(rng):
    # <b a, c> and <a, b* c> close up to the same diagram
    for _ in range(20):
        a = random_tangle_family(rng, "+++---", size=1, max_crossings=2)[0]
        i = rng.randrange(5)
        b = crossing_tangle("+++---", i, rng.random() < 0.5)
        c = random_tangle_family(rng, b.top, size=1, max_crossings=2)[0]
        d1 = close(stack(star(c), stack(b, a)))
        d2 = close(stack(star(stack(star(b), c)), a))
        assert oriented_code(d1) == oriented_code(d2)
        assert tangle_inner(stack(b, a), c) == tangle_inner(a, stack(star(b), c))


def test_insertion_order_does_not_matter(rng):
    for _ in range(40):
        t = random_tree(rng.randint(2, 7), rng)
        f = Forest.of(t)
        base = phi_of_forest(f, "+")
        for _ in range(3):
            other = phi_of_forest(f, "+", insertions=f.random_insertions(rng))
            assert oriented_code(close(stack(star(other), base))) == oriented_code(
                close(stack(star(base), base))
            )
            assert other.top == base.top


def test_wrong_insertions_rejected():
    f = Forest.of(parse_tree("((ll)l)"))
    with pytest.raises(ValueError):
        phi_of_forest(f, "+", insertions=[1, 2])


def test_link_crossings_and_checks(rng):
    for g in rng.sample(oriented_products(), 40):
        d = build_link(g)
        assert d.crossings == g.carets
        assert d.writhe == 0
        check_diagram(d)
        assert euler_ok(d)
        assert component_count(d) == component_count_unionfind(d)


def test_identity_link_is_unknot():
    d = build_link(IDENTITY)
    assert d.crossings == 0 and component_count(d) == 1
    assert homfly(d) == ONE


def test_single_caret_pair_is_two_component_unlink():
    t = parse_tree("(ll)")
    d = build_link(GroupElement(t, t))
    assert d.crossings == 2
    assert component_count(d) == 2
    assert homfly(d) == DELTA


def test_x0_fails_at_determinate_index():
    lower = phi_of_forest(X0.plus, "+")
    upper = star(phi_of_forest(X0.minus, "+"))
    with pytest.raises(BoundaryMismatch) as exc:
        stack(upper, lower)
    # leaf i sits at boundary point 2i - 1
    assert exc.value.index == 2 * first_sign_mismatch(X0) - 1 == 3
    for g in (X0, X1):
        with pytest.raises(NotOriented):
            build_link(g)


def test_unoriented_link_agrees(rng):
    for g in rng.sample(oriented_products(), 40):
        assert unoriented_code(build_unoriented_link(g)) == unoriented_code(build_link(g))
    d = build_unoriented_link(X0)
    assert d.crossings == X0.carets and not d.oriented


def test_pd_json_round_trip(rng):
    for g in rng.sample(oriented_products(), 20):
        d = build_link(g)
        back = from_dict(to_dict(d))
        assert oriented_code(back) == oriented_code(d)
        assert homfly(back) == homfly(d)


def test_from_dict_rejects_broken_edges():
    data = to_dict(build_link(oriented_products()[5]))
    data["crossings"][0]["ports"][0] = 999
    with pytest.raises(DiagramError):
        from_dict(data)


def test_stack_mismatched_counts():
    with pytest.raises(BoundaryMismatch):
        stack(identity("+-"), identity("+-+"))


def test_cap_tangle_rules():
    with pytest.raises(BoundaryMismatch):
        cap_tangle("++", [(0, 1)])
    with pytest.raises(DiagramError):
        cap_tangle("+-+-", [(0, 2), (1, 3)])


@pytest.mark.parametrize("convention, plus_type", [("standard", 1), ("mirror", -1)])
def test_tait_graph_oracle(convention, plus_type):
    rng = random.Random(3)
    pool = [g for g in oriented_products() if g.carets <= 12]
    for g in rng.sample(pool, 40):
        j = jones_from_homfly(homfly(build_link(g, convention)))
        assert abs(j - tait_jones(g, plus_type)) < 1e-8


def test_conjugation_preserves_pairing(rng):
    fam = random_tangle_family(rng, "+++---", size=3, max_crossings=3)
    for i in range(5):
        for inv in (False, True):
            moved = [conjugate_by_crossing(t, i, inv) for t in fam]
            for x, y in zip(fam, fam[1:] + fam[:1]):
                xi, yi = fam.index(x), fam.index(y)
                assert tangle_inner(moved[xi], moved[yi]) == tangle_inner(x, y)


def test_random_tangle_family_shape(rng):
    fam = random_tangle_family(rng, "+++---", size=4, max_crossings=4)
    assert len(fam) == 4
    for t in fam:
        assert t.bottom == "" and t.top == "+++---"
        assert t.crossings <= 4
        check_diagram(t)


def test_identity_strand_pairing():
    up = identity("+")
    assert tangle_inner(up, up) == ONE
    assert tangle_inner(up, up, normalization="loop") == DELTA
