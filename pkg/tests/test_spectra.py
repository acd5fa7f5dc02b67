import math
import random
from fractions import Fraction

import pytest

from cayspec.colour import ConnectionMultiset, colour_from_multiset, colour_from_values
from cayspec.errors import UnsupportedFamily
from cayspec.exactnum import Cyclotomic
from cayspec.groups import (
    make_cyclic,
    make_dihedral,
    make_from_generators,
    make_product,
)
from cayspec.spectra import (
    adjacency_matrix,
    char_table_abelian,
    char_table_cyclic,
    char_table_dihedral,
    character_table,
    compare_spectra,
    spectrum_exact,
    spectrum_numeric,
)
from conftest import d5_s1, d5_s2, d8_alpha, d8_beta, random_class_function


def check_row_orthogonality(table):
    G = table.group
    n = G.order
    part = table.partition
    sizes = [len(c) for c in part.classes]
    inv_class = [
        part.class_of[G.inv(rep)] for rep in part.representatives
    ]
    for i, row_i in enumerate(table.rows):
        for j, row_j in enumerate(table.rows):
            total = Cyclotomic.zero(n)
            for ci in range(len(sizes)):
                total = total + row_i.values[ci] * row_j.values[inv_class[ci]] * sizes[ci]
            assert total == (n if i == j else 0)


def check_column_orthogonality(table):
    G = table.group
    n = G.order
    part = table.partition
    inv_class = [part.class_of[G.inv(rep)] for rep in part.representatives]
    for ci in range(len(part.classes)):
        for cj in range(len(part.classes)):
            total = Cyclotomic.zero(n)
            for row in table.rows:
                total = total + row.values[ci] * row.values[inv_class[cj]]
            expected = n // len(part.classes[ci]) if ci == cj else 0
            assert total == expected


def test_cyclic_trivial_table():
    table = char_table_cyclic(make_cyclic(1))
    assert len(table.rows) == 1
    assert table.rows[0].values[0] == 1


def test_cyclic_table_values():
    table = char_table_cyclic(make_cyclic(4))
    assert table.rows[1].values[1] == Cyclotomic.from_exponents(4, {1: 1})
    assert table.rows[2].values[2] == 1  # z^(2*2) = z^4 = 1


@pytest.mark.parametrize("n", range(1, 25))
def test_cyclic_orthogonality(n):
    check_row_orthogonality(char_table_cyclic(make_cyclic(n)))


def test_abelian_product_table():
    G = make_product(make_cyclic(2), make_cyclic(2))
    table = char_table_abelian(G)
    assert len(table.rows) == 4
    values = {row.values[g] for row in table.rows for g in range(4)}
    assert values == {Cyclotomic.one(4), Cyclotomic.from_rational(4, -1)}


def test_abelian_character_count_and_orthogonality():
    G = make_product(make_cyclic(2), make_cyclic(3))
    table = char_table_abelian(G)
    assert len(table.rows) == G.order
    check_row_orthogonality(table)
    check_column_orthogonality(table)


def test_abelian_rejects_nonabelian_factor():
    G = make_product(make_dihedral(3), make_cyclic(2))
    with pytest.raises(UnsupportedFamily):
        char_table_abelian(G)


def test_dihedral_tables():
    D8 = make_dihedral(8)
    table = char_table_dihedral(D8)
    degrees = sorted(row.degree for row in table.rows)
    assert degrees == [1, 1, 1, 1, 2, 2, 2]
    assert sum(d * d for d in degrees) == 16

    D5 = make_dihedral(5)
    table5 = char_table_dihedral(D5)
    assert sorted(row.degree for row in table5.rows) == [1, 1, 2, 2]


def test_dihedral_sign_character_on_reflections():
    for m in (3, 4, 5, 8):
        G = make_dihedral(m)
        table = char_table_dihedral(G)
        sign_row = table.rows[1]
        part = table.partition
        for ci, rep in enumerate(part.representatives):
            if rep >= m:
                assert sign_row.values[ci] == -1


@pytest.mark.parametrize("m", range(1, 11))
def test_dihedral_orthogonality(m):
    table = char_table_dihedral(make_dihedral(m))
    check_row_orthogonality(table)
    check_column_orthogonality(table)


def test_character_table_dispatch_unsupported():
    G = make_from_generators([(1, 2, 3, 0), (2, 1, 0, 3)])
    with pytest.raises(UnsupportedFamily):
        character_table(G)


def test_spectrum_zero_colour():
    G = make_dihedral(4)
    f = colour_from_values(G, {})
    spec = spectrum_exact(f, character_table(G))
    assert spec.pairs == ((Cyclotomic.zero(8), 8),)


def test_spectrum_alpha_pairs():
    G, alpha = d8_alpha()
    spec = spectrum_exact(alpha, character_table(G))
    surd = Cyclotomic.from_exponents(16, {2: Fraction(2, 5), 14: Fraction(2, 5)})
    expected = {
        Cyclotomic.from_rational(16, Fraction(241, 5)): 1,
        Cyclotomic.from_rational(16, Fraction(49, 5)): 1,
        Cyclotomic.from_rational(16, Fraction(-71, 5)): 1,
        Cyclotomic.from_rational(16, Fraction(-199, 5)): 1,
        Cyclotomic.from_rational(16, -1): 4,
        surd: 4,
        -surd: 4,
    }
    assert dict(spec.pairs) == expected


def test_spectrum_beta_pairs():
    G, beta = d8_beta()
    spec = spectrum_exact(beta, character_table(G))
    assert {(str(v), m) for v, m in spec.pairs} == {
        ("58", 1),
        ("18", 1),
        ("-14", 1),
        ("-38", 1),
        ("-6", 4),
        ("0", 8),
    }


def test_spectrum_s2_pairs():
    G, S2 = d5_s2()
    spec = spectrum_exact(colour_from_multiset(S2), character_table(G))
    assert dict(spec.pairs) == {
        Cyclotomic.from_rational(10, 8): 2,
        Cyclotomic.from_rational(10, -2): 8,
    }


def test_spectrum_sorted_descending():
    G, S1 = d5_s1()
    spec = spectrum_exact(colour_from_multiset(S1), character_table(G))
    embeddings = [v.real_embedding() for v, _ in spec.pairs]
    assert embeddings == sorted(embeddings, reverse=True)


def test_adjacency_matrix_properties():
    G = make_cyclic(6)
    zero = colour_from_values(G, {})
    assert all(not any(row) for row in adjacency_matrix(zero))

    Gd, S1 = d5_s1()
    f = colour_from_multiset(S1)
    rows = adjacency_matrix(f)
    bag = sorted(f.values)
    for row in rows:
        assert sorted(row) == bag
        assert sum(row) == 9


def test_numeric_pentagon_closed_form():
    Z5 = make_cyclic(5)
    f = colour_from_multiset(ConnectionMultiset.from_elements(Z5, [1, 4]))
    numeric = spectrum_numeric(f)
    expected = sorted(
        (2 * math.cos(2 * math.pi * k / 5) for k in range(5)), reverse=True
    )
    assert numeric == pytest.approx(expected, abs=1e-8)


def test_numeric_matches_exact_for_alpha():
    G, alpha = d8_alpha()
    spec = spectrum_exact(alpha, character_table(G))
    comparison = compare_spectra(spec, spectrum_numeric(alpha), tol=1e-8)
    assert comparison.matches


def test_compare_flags_perturbation():
    G, beta = d8_beta()
    spec = spectrum_exact(beta, character_table(G))
    numeric = spectrum_numeric(beta)
    numeric[0] += 1e-3
    comparison = compare_spectra(spec, numeric, tol=1e-8)
    assert not comparison.matches
    assert comparison.worst_pair is not None
    assert comparison.max_deviation == pytest.approx(1e-3, rel=1e-6)


def trace_identities(f, spec):
    n = f.group.order
    total = Cyclotomic.zero(n)
    total_sq = Cyclotomic.zero(n)
    for _, degree, lam in spec.per_irreducible:
        total = total + lam * degree**2
        total_sq = total_sq + lam * lam * degree**2
    assert total == n * f.values[0]
    assert total_sq == Cyclotomic.from_rational(
        n, Fraction(n) * sum(v * v for v in f.values)
    )


def test_trace_and_frobenius_identities_sampled():
    rng = random.Random(99)
    for G in (make_cyclic(8), make_dihedral(6), make_product(make_cyclic(2), make_cyclic(4))):
        table = character_table(G)
        for _ in range(5):
            f = random_class_function(G, rng)
            trace_identities(f, spectrum_exact(f, table))


def test_exact_vs_numeric_sampled():
    rng = random.Random(123)
    for G in (make_cyclic(11), make_dihedral(5)):
        table = character_table(G)
        for _ in range(10):
            f = random_class_function(G, rng)
            spec = spectrum_exact(f, table)
            assert compare_spectra(spec, spectrum_numeric(f), tol=1e-8).matches


def test_spectrum_multiplicity_total():
    rng = random.Random(4)
    for G in (make_dihedral(7), make_cyclic(9)):
        f = random_class_function(G, rng)
        spec = spectrum_exact(f, character_table(G))
        assert sum(m for _, m in spec.pairs) == G.order
        assert all(abs(v.to_complex().imag) < 1e-9 for v, _ in spec.pairs)
