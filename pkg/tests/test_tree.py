import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coloured_neretin import (
    CompleteSubtree,
    IncompleteTree,
    PlaneOrder,
    admissible_child_colours,
    check_address,
    is_complete_leafset,
    is_prefix,
    is_valid_address,
    plane_for,
    random_complete_tree,
    simple_expansion,
    sphere,
    trivial_group,
)
from conftest import four_orbit_group, rotation_group, switch_group


# -- addresses -----------------------------------------------------------------


def brute_sphere(d, n):
    words = [(c,) for c in range(d + 1)]
    for _ in range(n - 1):
        words = [w + (c,) for w in words for c in range(d + 1) if c != w[-1]]
    return words


def test_address_validity():
    assert is_valid_address((), 3)
    assert is_valid_address((0, 1, 0), 3)
    assert not is_valid_address((0, 0), 3)
    assert not is_valid_address((4,), 3)
    assert not is_valid_address((-1,), 3)
    check_address((2, 0, 2), 3)
    with pytest.raises(ValueError):
        check_address((1, 1), 3)
    with pytest.raises(ValueError):
        check_address((0, 5), 3)


def test_admissible_child_colours():
    assert admissible_child_colours((), 3) == [0, 1, 2, 3]
    assert admissible_child_colours((2,), 3) == [0, 1, 3]
    assert admissible_child_colours((0, 1), 3) == [0, 2, 3]


def test_sphere_counts():
    for d in (2, 3, 4):
        for n in (1, 2, 3):
            words = sphere(d, n)
            assert words == brute_sphere(d, n)
            assert len(words) == (d + 1) * d ** (n - 1)
    assert sphere(3, 0) == [()]


def test_is_prefix():
    assert is_prefix((), (0, 1))
    assert is_prefix((0, 1), (0, 1))
    assert is_prefix((0, 1), (0, 1, 2))
    assert not is_prefix((0, 1), (0, 2, 1))
    assert not is_prefix((0, 1, 2), (0, 1))


# -- plane order: frozen values for the rotation group --------------------------


def test_rotation_group_child_orders():
    # F = <(1 2 3)> on colours {0,1,2,3}: canonical maps are
    # f_0 = f_1 = id, f_2 = (1 3 2), f_3 = (1 2 3), giving these child orders
    plane = PlaneOrder(rotation_group())
    assert plane.child_colour_order(()) == [0, 1, 2, 3]
    assert plane.child_colour_order((0,)) == [1, 2, 3]
    assert plane.child_colour_order((1,)) == [0, 2, 3]
    assert plane.child_colour_order((2,)) == [0, 3, 1]
    assert plane.child_colour_order((3,)) == [0, 1, 2]
    assert plane.children((2,)) == [(2, 0), (2, 3), (2, 1)]


def test_canonical_map_properties():
    for group in (rotation_group(), switch_group(), four_orbit_group()):
        plane = PlaneOrder(group)
        for chi in range(group.degree):
            f = plane.canonical_maps[chi]
            rep = group.orbit_reps[group.orbit_of[chi]]
            assert f(chi) == rep
            # lexicographically least element of the group with f(chi) = rep
            candidates = [g for g in group.elements if g(chi) == rep]
            assert f == min(candidates)
        # representative colours get the identity, so rep vertices sort children
        # by plain colour order
        for rep in group.orbit_reps:
            assert plane.canonical_maps[rep].is_identity()


def test_transport_composition():
    group = rotation_group()
    plane = PlaneOrder(group)
    assert plane.transport(1, 1).is_identity()
    t12 = plane.transport(1, 2)
    t23 = plane.transport(2, 3)
    t13 = plane.transport(1, 3)
    assert t23 * t12 == t13
    with pytest.raises(ValueError):
        plane.transport(0, 1)  # different orbits


def test_transport_tail_preserves_validity():
    group = rotation_group()
    plane = PlaneOrder(group)
    rng = random.Random(7)
    for _ in range(50):
        tail = []
        last = None
        for _ in range(6):
            c = rng.choice([x for x in range(4) if x != last])
            tail.append(c)
            last = c
        src = rng.choice([1, 2, 3])
        dst = rng.choice([1, 2, 3])
        src_tail = tuple(tail) if tail[0] != src else tuple(tail[1:])
        if not src_tail:
            continue
        image = plane.transport_tail(src, dst, src_tail)
        assert len(image) == len(src_tail)
        assert is_valid_address((dst,) + image, 3)


def test_lex_order_is_total_and_descendant_first():
    group = switch_group()
    plane = plane_for(group)
    words = [w for n in (1, 2, 3) for w in brute_sphere(3, n)]
    ordered = plane.lex_sorted(words)
    # total order: sorting is stable and comparisons agree pairwise
    for i in range(len(ordered)):
        for j in range(i + 1, len(ordered)):
            assert plane.lex_compare(ordered[i], ordered[j]) == -1
            assert plane.lex_compare(ordered[j], ordered[i]) == 1
        assert plane.lex_compare(ordered[i], ordered[i]) == 0
    # strict descendants come before their ancestors, siblings follow the
    # plane order of their parent
    position = {w: k for k, w in enumerate(ordered)}
    for w in ordered:
        if len(w) < 3:
            children = plane.children(w)
            assert all(position[c] < position[w] for c in children)
            assert [position[c] for c in children] == sorted(
                position[c] for c in children
            )


def test_lex_order_branches_by_plane_order():
    plane = plane_for(rotation_group())
    # at a colour-2 vertex the plane order is [0, 3, 1]
    assert plane.lex_compare((2, 3), (2, 1)) == -1
    assert plane.lex_compare((2, 0), (2, 3)) == -1
    # descendants of an earlier sibling stay earlier
    assert plane.lex_compare((2, 0, 1), (2, 3)) == -1


def test_plane_for_caches():
    group = rotation_group()
    assert plane_for(group) is plane_for(group)


# -- complete subtrees -----------------------------------------------------------


def test_ball_leaves():
    tree = CompleteSubtree.ball(3, 2)
    assert len(tree) == 12
    assert tree.depth() == 2
    assert sorted(tree.leaves) == sorted(brute_sphere(3, 2))


def test_expand_contract_inverse():
    tree = CompleteSubtree.ball(2, 1)
    bigger = tree.expand((1,))
    assert len(bigger) == len(tree) + 1
    assert (1, 0) in bigger and (1, 2) in bigger and (1,) not in bigger
    assert bigger.contract((1,)) == tree
    with pytest.raises(ValueError):
        tree.expand((0, 1))  # not a leaf
    with pytest.raises(ValueError):
        bigger.contract((0,))  # children not all leaves


def test_leaf_containing_and_index():
    tree = CompleteSubtree.ball(2, 2)
    assert tree.leaf_containing((0, 1, 2, 0)) == (0, 1)
    assert tree.leaf_containing((2, 0)) == (2, 0)
    assert tree.leaf_containing((1,)) is None  # proper ancestor of leaves
    leaf = tree.leaves[5]
    assert tree.leaves[tree.leaf_index(leaf)] == leaf


def test_incomplete_leafsets_rejected():
    with pytest.raises(IncompleteTree):
        CompleteSubtree(2, [(0,), (1,)])
    with pytest.raises(IncompleteTree):
        CompleteSubtree(2, [(0,), (1,), (2,), (1, 0)])
    assert not is_complete_leafset([(0,), (1,)], 2)
    assert is_complete_leafset([(0,), (1,), (2,)], 2)


def test_internal_vertices():
    tree = CompleteSubtree.ball(2, 2)
    internal = tree.internal_vertices()
    assert () in internal
    assert all(len(v) < 2 for v in internal)
    assert len(internal) == 1 + 3  # root plus first sphere


def test_simple_expansion():
    tree = CompleteSubtree.ball(3, 1)
    assert simple_expansion(tree, (2,)) == tree.expand((2,))


# -- randomized complete-subtree invariants --------------------------------------


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=20), st.integers())
@settings(max_examples=60, deadline=None)
def test_random_complete_tree_invariants(d, expansions, seed):
    tree = random_complete_tree(d, random.Random(seed), expansions)
    leaves = tree.leaves
    assert is_complete_leafset(leaves, d)
    assert len(leaves) == (d + 1) + expansions * (d - 1)
    # leaves form an antichain covering the boundary with total mass 1
    for i, u in enumerate(leaves):
        for v in leaves[i + 1:]:
            assert not is_prefix(u, v) and not is_prefix(v, u)
    mass = sum(Fraction(1, (d + 1) * d ** (len(u) - 1)) for u in leaves)
    assert mass == 1


@given(st.integers(min_value=2, max_value=4), st.integers(min_value=0, max_value=12), st.integers())
@settings(max_examples=40, deadline=None)
def test_expand_then_contract_round_trip(d, expansions, seed):
    rng = random.Random(seed)
    tree = random_complete_tree(d, rng, expansions)
    leaf = tree.leaves[rng.randrange(len(tree))]
    assert tree.expand(leaf).contract(leaf) == tree
