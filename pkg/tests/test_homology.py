from fractions import Fraction

import pytest

from modsym.cosets import CosetTable
from modsym.psl2 import S
from modsym.homology import (
    ST,
    ST2,
    _rref,
    _symbol_action,
    build_homology,
    classes_json,
    cusp_orbits,
    manin_presentation,
    symbol_class,
)


def _add(vecs):
    out = [Fraction(0)] * len(vecs[0])
    for v in vecs:
        for i, c in enumerate(v):
            out[i] += c
    return out


def test_rref_simple():
    rows = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    reduced, pivots = _rref(rows, 2)
    assert pivots == [0]
    assert reduced == [[Fraction(1), Fraction(2)]]


def test_presentation_dimensions_small():
    for N in (1, 2, 3, 5, 6, 11, 14, 37):
        table = CosetTable(N)
        pres = manin_presentation(table)
        inv = table.invariants
        assert pres.dimension == 2 * inv.genus + inv.n_inf - 1


def test_relations_vanish_in_quotient():
    """2-term and 3-term residuals are zero for every generator."""
    for N in (2, 6, 11):
        table = CosetTable(N)
        pres = manin_presentation(table)
        act_s = _symbol_action(table, S)
        act_st = _symbol_action(table, ST)
        act_st2 = _symbol_action(table, ST2)
        for e in range(table.size):
            two = _add([pres.class_of(e), pres.class_of(act_s[e])])
            assert all(c == 0 for c in two)
            three = _add(
                [pres.class_of(e), pres.class_of(act_st[e]), pres.class_of(act_st2[e])]
            )
            assert all(c == 0 for c in three)


def test_cusp_orbit_counts():
    for N in (1, 2, 6, 11, 25, 49):
        table = CosetTable(N)
        cusps = cusp_orbits(table)
        assert cusps.num_orbits == table.invariants.n_inf


def test_cuspidal_dimension_and_boundary(level11):
    data = level11.homology
    inv = data.table.invariants
    assert data.cuspidal.dimension == 2 * inv.genus == 2
    # every kernel vector has zero boundary: sum of (cusp0 - cuspInf) weights
    cusps = data.cusps
    pres = data.presentation
    for vec in data.cuspidal.kernel_basis:
        bnd = [Fraction(0)] * cusps.num_orbits
        for j, g in enumerate(pres.free_cols):
            bnd[cusps.cusp_of_zero[g]] += vec[j]
            bnd[cusps.cusp_of_infinity[g]] -= vec[j]
        assert all(c == 0 for c in bnd)


def test_projection_lands_in_kernel(level11):
    """Reconstruction: projected class, expanded in the kernel basis, differs
    from the original quotient class only by a boundary direction."""
    data = level11.homology
    pres, cusp = data.presentation, data.cuspidal
    for e in range(data.table.size):
        coords = symbol_class(data, e)
        recon = [Fraction(0)] * pres.dimension
        for coef, basis_vec in zip(coords, cusp.kernel_basis):
            for i, c in enumerate(basis_vec):
                recon[i] += coef * c
        # free coordinates of the reconstruction match the projection exactly
        assert cusp.project(recon) == coords


def test_class_sum_vanishes():
    for N in (2, 6, 11, 14):
        data = build_homology(CosetTable(N))
        if data.dimension == 0:
            continue
        total = _add([list(v) for v in data.classes])
        assert all(c == 0 for c in total)


def test_determinism(level11):
    again = build_homology(CosetTable(11))
    assert again.classes == level11.homology.classes


def test_classes_json(level11):
    payload = classes_json(level11.homology)
    assert payload["N"] == 11 and payload["dimension"] == 2
    assert len(payload["classes"]) == 12
    assert all(len(v) == 2 for v in payload["classes"])


# Regression fixture: exact classes at N=11, recorded after the first verified
# run (class-sum, relation, boundary and telescoping checks all green).
N11_CLASSES = [
    (0, 0), (0, 0), (0, 0), (0, 1), (-1, 1), (-1, 0),
    (0, -1), (0, -1), (1, -1), (1, 0), (0, 1), (0, 0),
]


def test_n11_regression(level11):
    data = level11.homology
    assert [tuple(map(int, c)) for c in data.classes] == N11_CLASSES
    # identity coset carries the zero class
    ident = data.table.identity_label()
    assert symbol_class(data, ident) == (Fraction(0), Fraction(0))
    # golden-cycle numerator fixture from the verified run
    cycle_cosets = [0, 11, 3, 5, 10, 6, 4, 7, 11, 1]
    total = _add([list(symbol_class(data, e)) for e in cycle_cosets])
    assert total == [Fraction(-2), Fraction(1)]


def test_nonsquarefree_levels():
    for N in (4, 8, 9, 12, 16, 18, 27, 45, 50):
        data = build_homology(CosetTable(N))
        inv = data.table.invariants
        assert data.presentation.dimension == 2 * inv.genus + inv.n_inf - 1
        assert data.cuspidal.dimension == 2 * inv.genus
