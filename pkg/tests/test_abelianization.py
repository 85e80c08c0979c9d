import random

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from coloured_neretin import (
    Abelianization,
    IntMatrix,
    bareiss_determinant,
    build_sft_graph,
    dot_export,
    sft_graph_for_group,
    smith_normal_form as snf,
    vf_abelianization,
)
from coloured_neretin.covolume import compositions
from conftest import four_orbit_group, rotation_group, switch_group


# -- oracles ------------------------------------------------------------------


def random_int_matrix(rng, n, bound=9):
    return IntMatrix(
        [[rng.randrange(-bound, bound + 1) for _ in range(n)] for _ in range(n)]
    )


def sympy_invariants(matrix):
    M = Matrix(matrix.entries)
    diagonal = [
        abs(smith_normal_form(M)[i, i]) for i in range(min(M.rows, M.cols))
    ]
    return [x for x in diagonal if x != 0]


# -- determinant and SNF against sympy ----------------------------------------


def test_bareiss_determinant_matches_sympy():
    rng = random.Random(41)
    for _ in range(60):
        n = rng.randrange(1, 7)
        m = random_int_matrix(rng, n)
        assert bareiss_determinant(m) == Matrix(m.entries).det()


def test_smith_normal_form_matches_sympy():
    rng = random.Random(42)
    for _ in range(60):
        n = rng.randrange(1, 6)
        m = random_int_matrix(rng, n)
        _, invariants, _ = snf(m)
        nonzero = [x for x in invariants.invariant_factors if x != 0]
        assert nonzero == sympy_invariants(m)


def test_smith_normal_form_divisibility_chain():
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randrange(2, 6)
        m = random_int_matrix(rng, n, bound=20)
        _, invariants, _ = snf(m)
        factors = invariants.invariant_factors
        for a, b in zip(factors, factors[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0
    # and the product of nonzero factors is |det| for nonsingular matrices
    for _ in range(40):
        n = rng.randrange(1, 6)
        m = random_int_matrix(rng, n)
        det = bareiss_determinant(m)
        if det == 0:
            continue
        _, invariants, _ = snf(m)
        product = 1
        for x in invariants.invariant_factors:
            product *= x
        assert product == abs(det)


# -- the orbit graph -------------------------------------------------------------


def test_graph_shape():
    for sizes in ((1, 3, 2), (2, 2), (4,), (1, 1, 1)):
        graph = build_sft_graph(sizes)
        d = sum(sizes) - 1
        assert graph.d == d
        assert graph.l == len(sizes) - 1
        assert len(graph.vertices) == d + 1
        # direct vertices first, one per orbit, then the loop relays
        direct = [v for v in graph.vertices if v[0] == "D"]
        assert len(direct) == len(sizes)
        relays = [v for v in graph.vertices if v[0] == "delta"]
        assert len(relays) == sum(x - 1 for x in sizes)


def test_graph_matrix_row_sums():
    for sizes in ((1, 3, 2), (2, 2), (4,), (1, 1, 2, 3)):
        graph = build_sft_graph(sizes)
        d = graph.d
        for i, v in enumerate(graph.vertices):
            row = sum(graph.matrix[i, j] for j in range(len(graph.vertices)))
            if v[0] == "D":
                assert row == d  # d outgoing edges from each orbit vertex
            else:
                assert row == 1  # relays forward a single edge


def test_graph_edges_consistent_with_matrix():
    for sizes in ((1, 3, 2), (2, 2), (4,)):
        graph = build_sft_graph(sizes)
        counts = {}
        for source, target, _ in graph.edges():
            key = (graph.vertex_index(source), graph.vertex_index(target))
            counts[key] = counts.get(key, 0) + 1
        for i in range(len(graph.vertices)):
            for j in range(len(graph.vertices)):
                assert counts.get((i, j), 0) == graph.matrix[i, j]


def test_graph_edge_labels_are_colours():
    graph = build_sft_graph((1, 3, 2))
    d = graph.d
    for _, target, letter in graph.edges():
        if letter is None:
            assert target[0] == "D"  # relay edges carry no new colour
        else:
            assert 0 <= letter <= d


def test_graph_for_group_matches_sizes():
    for group in (switch_group(), rotation_group(), four_orbit_group()):
        graph = sft_graph_for_group(group)
        assert graph.orbit_sizes == group.orbit_sizes
        assert graph.orbit_colours == group.orbits
        same = build_sft_graph(group.orbit_sizes, group.orbits)
        assert same.vertices == graph.vertices
        assert same.matrix == graph.matrix


def test_dot_export_mentions_all_vertices():
    graph = build_sft_graph((2, 2))
    text = dot_export(graph)
    assert text.startswith("digraph")
    assert text.count("->") == sum(
        graph.matrix[i, j]
        for i in range(len(graph.vertices))
        for j in range(len(graph.vertices))
    )


def test_build_sft_graph_validates():
    with pytest.raises(ValueError):
        build_sft_graph((1, 1))  # d+1 = 2 is below the minimum
    with pytest.raises(ValueError):
        build_sft_graph((0, 3))


# -- abelianization invariants ------------------------------------------------------


def test_four_orbit_example_frozen_values():
    ab = vf_abelianization((1, 2, 2, 2))
    assert ab.determinant == 2 ** 3 * (1 - 6)  # -40
    assert ab.invariant_factors == (2, 2, 10)
    assert ab.two_torsion_rank == 3
    assert ab.kernel_rank == 0
    assert ab.describe() == "(Z/2)^3"
    # derived-subgroup index 2^3 = 8
    assert 2 ** ab.two_torsion_rank == 8


def test_abelianization_closed_form_small_sweep():
    for d in range(2, 6):
        for sizes in compositions(d + 1):
            ab = vf_abelianization(sizes)
            l = len(sizes) - 1
            expected = l + 1 if all(x % 2 == 0 for x in sizes) else l
            assert ab.two_torsion_rank == expected
            if expected:
                assert ab.describe() == "(Z/2)^%d" % expected
            else:
                assert "perfect" in ab.describe()


def test_determinant_identity_small_sweep():
    for d in range(2, 6):
        for sizes in compositions(d + 1):
            ab = vf_abelianization(sizes)
            l = len(sizes) - 1
            assert ab.determinant == 2 ** l * (1 - d)


def test_factor_product_equals_determinant():
    for sizes in ((1, 2, 2, 2), (2, 2), (1, 3), (3, 3), (1, 1, 2)):
        ab = vf_abelianization(sizes)
        product = 1
        for x in ab.invariant_factors:
            product *= x
        assert product == abs(ab.determinant)


def test_abelianization_group_order_vs_snf_matrix():
    # the SNF of (I - M^t) recomputed through sympy gives the same factors
    for sizes in ((1, 2, 2, 2), (2, 2), (4,), (1, 1, 1, 1)):
        graph = build_sft_graph(sizes)
        n = len(graph.vertices)
        entries = [
            [(1 if i == j else 0) - graph.matrix[j, i] for j in range(n)]
            for i in range(n)
        ]
        expected = [x for x in sympy_invariants(IntMatrix(entries)) if x != 1]
        ab = vf_abelianization(sizes)
        assert list(ab.invariant_factors) == expected


def test_abelianization_is_a_dataclass_with_sizes():
    ab = vf_abelianization((2, 2))
    assert isinstance(ab, Abelianization)
    assert ab.orbit_sizes == (2, 2)
    assert ab.two_torsion_rank == 2  # both orbit sizes even: l + 1