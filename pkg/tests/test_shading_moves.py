import random

import pytest

from diagrams import oriented_products
from thompson_homfly.forest import X0, X1, iter_reduced_pairs
from thompson_homfly.homfly import homfly
from thompson_homfly.moves import (
    MOVES,
    Move,
    MoveError,
    apply_move,
    kinks,
    r1_add,
    r1_remove,
    r2_add,
    r2_remove,
    r3,
    r3_sites,
    random_sequence,
    removable_bigons,
)
from thompson_homfly.shading import induced_orientation_agrees, shade
from thompson_homfly.signs import is_oriented
from thompson_homfly.tangles import (
    build_link,
    build_unoriented_link,
    check_diagram,
    component_count,
    faces,
    oriented_code,
    unoriented_code,
)


def test_shading_matches_membership_small():
    for g in iter_reduced_pairs(5):
        s = shade(build_unoriented_link(g))
        assert s.orientable == is_oriented(g), g


def test_generators_give_non_orientable_surfaces():
    for g in (X0, X1):
        s = shade(build_unoriented_link(g))
        assert not s.orientable
        assert s.conflict is not None


@pytest.mark.parametrize("convention", ["standard", "mirror"])
def test_induced_orientation(convention):
    rng = random.Random(5)
    for g in rng.sample(oriented_products(), 40):
        assert induced_orientation_agrees(build_link(g, convention))


def test_outer_face_unshaded():
    d = build_link(oriented_products()[10])
    s = shade(d)
    assert not s.shaded[s.outer_face]
    assert s.shaded[s.leftmost_face]


def _some_link(i=20):
    return build_link(oriented_products()[i])


def test_r1_add_then_remove():
    d = _some_link()
    code = oriented_code(d)
    for dart in sorted(d.adj)[:8]:
        for left in (True, False):
            for over_first in (True, False):
                e = r1_add(d, dart, left, over_first)
                check_diagram(e)
                assert e.crossings == d.crossings + 1
                new = e.crossings - 1
                assert new in kinks(e)
                assert oriented_code(r1_remove(e, new)) == code


def test_r2_add_then_remove():
    d = _some_link()
    code = oriented_code(d)
    rng = random.Random(1)
    tried = 0
    for f in faces(d):
        if len(f) < 2:
            continue
        a, b = rng.sample(f, 2)
        if {a, d.adj[a]} == {b, d.adj[b]}:
            continue
        e = r2_add(d, a, b, rng.random() < 0.5)
        check_diagram(e)
        n = d.crossings
        assert (n, n + 1) in removable_bigons(e) or (n + 1, n) in removable_bigons(e)
        assert oriented_code(r2_remove(e, n, n + 1)) == code
        tried += 1
    assert tried > 3


def test_r3_preserves_structure_and_value():
    rng = random.Random(2)
    found = 0
    for g in oriented_products():
        d = build_link(g)
        d, _ = random_sequence(d, rng, 4, max_crossings=12)
        for site in r3_sites(d)[:2]:
            e = r3(d, site)
            check_diagram(e)
            assert e.crossings == d.crossings
            assert component_count(e) == component_count(d)
            assert homfly(e) == homfly(d)
            found += 1
        if found > 15:
            break
    assert found > 5


def test_random_sequences_stay_valid():
    rng = random.Random(9)
    kinds = set()
    for g in rng.sample(oriented_products(), 30):
        d = build_link(g)
        if d.crossings == 0:
            continue
        e, used = random_sequence(d, rng, 8, max_crossings=14)
        check_diagram(e)
        assert component_count(e) == component_count(d)
        kinds.update(m.kind for m in used)
    assert kinds == set(MOVES)


def test_unoriented_code_relabel_invariant():
    d = _some_link()
    # relabel crossings by reversing their order
    n = d.crossings
    perm = {c: n - 1 - c for c in range(n)}

    def m(s):
        return s if s[0] < 0 else (perm[s[0]], s[1])

    adj = {m(s): m(u) for s, u in d.adj.items()}
    signs = tuple(d.signs[n - 1 - c] for c in range(n))
    from thompson_homfly.tangles import Tangle

    e = Tangle(adj, signs, d.bottom, d.top, d.loops, m(d.outer) if d.outer else None)
    assert unoriented_code(e) == unoriented_code(d)
    assert oriented_code(e) == oriented_code(d)


def test_bad_move():
    with pytest.raises(MoveError):
        apply_move(_some_link(), Move("R4", ()))
