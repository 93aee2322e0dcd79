"""Exact rational homology of the level-N modular curve via coset symbols.

One generator per coset label, subject to the classical two-term
(x + x.S = 0) and three-term (x + x.(ST) + x.(ST)^2 = 0) relations; the
quotient is the relative homology of the compactified curve, of
dimension 2g + n_inf - 1.  The boundary map sends a generator to the
difference of its two cusps, and its kernel is the cuspidal subspace of
dimension 2g.  Everything here is Fraction arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cosets import CosetTable
from .psl2 import S, T

ST = S * T
ST2 = ST * ST


class DimensionMismatch(AssertionError):
    """A computed dimension disagrees with the closed-form invariant."""


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns nonzero rows and pivot columns."""
    rows = [row[:] for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


@dataclass
class RelativePresentation:
    """Quotient of the free module on coset symbols by the Manin relations."""

    table: CosetTable
    pivots: list[int]
    free_cols: list[int]
    # expressor[g] = coordinates of generator g in the free-column basis
    expressor: list[list[Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.free_cols)

    def class_of(self, e: int) -> list[Fraction]:
        return self.expressor[e]


def _symbol_action(table: CosetTable, m) -> list[int]:
    """Permutation-with-matrix right action e -> label(rep(e) * m)."""
    return [table.right_translate(e, m) for e in range(table.size)]


def manin_presentation(table: CosetTable) -> RelativePresentation:
    n = table.size
    act_s = _symbol_action(table, S)
    act_st = _symbol_action(table, ST)
    act_st2 = _symbol_action(table, ST2)

    rows: list[list[Fraction]] = []
    zero = Fraction(0)
    seen = set()
    for e in range(n):
        pair = tuple(sorted((e, act_s[e])))
        if pair not in seen:
            seen.add(pair)
            row = [zero] * n
            row[e] += 1
            row[act_s[e]] += 1
            rows.append(row)
        triple = tuple(sorted((e, act_st[e], act_st2[e])))
        if triple not in seen:
            seen.add(triple)
            row = [zero] * n
            row[e] += 1
            row[act_st[e]] += 1
            row[act_st2[e]] += 1
            rows.append(row)

    reduced, pivots = _rref(rows, n)
    free_cols = [c for c in range(n) if c not in set(pivots)]
    col_pos = {c: i for i, c in enumerate(free_cols)}

    expressor: list[list[Fraction]] = []
    for g in range(n):
        coords = [zero] * len(free_cols)
        if g in col_pos:
            coords[col_pos[g]] = Fraction(1)
        else:
            r = pivots.index(g)
            # pivot generator = -sum of free-column entries of its row
            for c in free_cols:
                coords[col_pos[c]] = -reduced[r][c]
        expressor.append(coords)

    inv = table.invariants
    expected = 2 * inv.genus + inv.n_inf - 1
    if len(free_cols) != expected:
        raise DimensionMismatch(
            f"relative dimension {len(free_cols)} != {expected} at level {table.level}"
        )
    return RelativePresentation(table, pivots, free_cols, expressor)


@dataclass
class CuspOrbitMap:
    """Cusps as orbits of right T-translation on coset labels."""

    table: CosetTable
    orbit_of: list[int]
    num_orbits: int
    cusp_of_infinity: list[int]
    cusp_of_zero: list[int]


def cusp_orbits(table: CosetTable) -> CuspOrbitMap:
    n = table.size
    act_t = _symbol_action(table, T)
    orbit_of = [-1] * n
    count = 0
    for e in range(n):
        if orbit_of[e] != -1:
            continue
        cur = e
        while orbit_of[cur] == -1:
            orbit_of[cur] = count
            cur = act_t[cur]
        count += 1
    inv = table.invariants
    if count != inv.n_inf:
        raise DimensionMismatch(
            f"cusp orbit count {count} != {inv.n_inf} at level {table.level}"
        )
    act_s = _symbol_action(table, S)
    cusp_inf = orbit_of[:]
    cusp_zero = [orbit_of[act_s[e]] for e in range(n)]
    return CuspOrbitMap(table, orbit_of, count, cusp_inf, cusp_zero)


@dataclass
class CuspidalSpace:
    """Kernel of the boundary map inside the relative quotient.

    ``projector`` maps quotient coordinates to kernel coordinates along
    the complement spanned by the boundary matrix's pivot columns.
    """

    table: CosetTable
    presentation: RelativePresentation
    cusps: CuspOrbitMap
    kernel_basis: list[list[Fraction]]
    projector_cols: list[int]

    @property
    def dimension(self) -> int:
        return len(self.projector_cols)

    def project(self, quotient_coords: list[Fraction]) -> tuple[Fraction, ...]:
        return tuple(quotient_coords[c] for c in self.projector_cols)


def cuspidal_basis(pres: RelativePresentation, cusps: CuspOrbitMap) -> CuspidalSpace:
    table = pres.table
    qdim = pres.dimension
    n_inf = cusps.num_orbits
    zero = Fraction(0)

    # boundary of each quotient basis vector, assembled from generators
    boundary_cols: list[list[Fraction]] = [[zero] * qdim for _ in range(n_inf)]
    # The free-column generators themselves span the quotient basis.
    for j, g in enumerate(pres.free_cols):
        boundary_cols[cusps.cusp_of_zero[g]][j] += 1
        boundary_cols[cusps.cusp_of_infinity[g]][j] -= 1

    reduced, pivots = _rref(boundary_cols, qdim)
    free = [c for c in range(qdim) if c not in set(pivots)]

    inv = table.invariants
    if len(free) != 2 * inv.genus:
        raise DimensionMismatch(
            f"cuspidal dimension {len(free)} != {2 * inv.genus} at level {table.level}"
        )

    # standard-form kernel basis: one vector per free column
    kernel = []
    for f in free:
        vec = [zero] * qdim
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        kernel.append(vec)
    return CuspidalSpace(table, pres, cusps, kernel, free)


@dataclass
class HomologyData:
    """Per-level bundle: presentation, cusps, cuspidal projection, J values."""

    table: CosetTable
    presentation: RelativePresentation
    cusps: CuspOrbitMap
    cuspidal: CuspidalSpace
    classes: list[tuple[Fraction, ...]]

    @property
    def dimension(self) -> int:
        return self.cuspidal.dimension


def symbol_class(data: HomologyData, e: int) -> tuple[Fraction, ...]:
    """Cuspidal class of the coset symbol of e, an exact 2g-vector."""
    return data.classes[e]


def build_homology(table: CosetTable) -> HomologyData:
    pres = manin_presentation(table)
    cusps = cusp_orbits(table)
    cuspidal = cuspidal_basis(pres, cusps)
    classes = [cuspidal.project(pres.class_of(e)) for e in range(table.size)]
    return HomologyData(table, pres, cusps, cuspidal, classes)


def classes_json(data: HomologyData) -> dict:
    return {
        "N": data.table.level,
        "dimension": data.dimension,
        "classes": [
            [[c.numerator, c.denominator] for c in vec] for vec in data.classes
        ],
    }
