"""Exact spectra of Cayley colour graphs via character sums, plus a numeric oracle.

Character tables are built for the cyclic, product-of-cyclic and dihedral
families; the eigenvalue of each irreducible row is the class-weighted
character sum divided by the row degree, carried with multiplicity degree
squared.  The oracle diagonalizes the explicit adjacency matrix with cyclic
Jacobi rotations and never touches the character machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from cayspec._kernels import symmetric_eigenvalues
from cayspec.colour import ColourFunction, class_weight_vector
from cayspec.errors import InternalInconsistency, UnsupportedFamily
from cayspec.exactnum import Cyclotomic
from cayspec.groups import Group, ConjugacyClassPartition, conjugacy_classes

REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class CharacterRow:
    """One irreducible character: its degree and one exact value per class."""

    label: str
    degree: int
    values: tuple[Cyclotomic, ...]


@dataclass(frozen=True)
class CharacterTable:
    """All irreducible characters of a group, with values in the order-|G| field."""

    group: Group
    partition: ConjugacyClassPartition
    conductor: int
    rows: tuple[CharacterRow, ...]

    def value(self, row: int, element: int) -> Cyclotomic:
        return self.rows[row].values[self.partition.class_of[element]]


def _finish_table(G: Group, rows: list[CharacterRow]) -> CharacterTable:
    part = conjugacy_classes(G)
    if len(rows) != len(part.classes):
        raise InternalInconsistency(
            f"{len(rows)} irreducibles against {len(part.classes)} classes"
        )
    if sum(r.degree**2 for r in rows) != G.order:
        raise InternalInconsistency("degree squares do not sum to the group order")
    return CharacterTable(group=G, partition=part, conductor=G.order, rows=tuple(rows))


def char_table_cyclic(G: Group) -> CharacterTable:
    """The n linear characters k -> z^(jk) of a cyclic group of order n."""
    if G.family != "cyclic":
        raise UnsupportedFamily(f"expected a cyclic group, got {G.family}")
    n = G.order
    part = conjugacy_classes(G)
    rows = []
    for j in range(n):
        values = tuple(
            Cyclotomic.from_exponents(n, {(j * rep) % n: 1})
            for rep in part.representatives
        )
        rows.append(CharacterRow(label=f"chi{j}", degree=1, values=values))
    return _finish_table(G, rows)


def _cyclic_factor_orders(G: Group) -> Optional[list[int]]:
    # Flatten nested direct products down to cyclic factor orders, or None.
    if G.family == "cyclic":
        return [G.order]
    if G.family == "product" and G.factors is not None:
        left = _cyclic_factor_orders(G.factors[0])
        right = _cyclic_factor_orders(G.factors[1])
        if left is None or right is None:
            return None
        return left + right
    return None


def _mixed_radix(index: int, orders: Sequence[int]) -> list[int]:
    coords = [0] * len(orders)
    for pos in range(len(orders) - 1, -1, -1):
        index, coords[pos] = divmod(index, orders[pos])
    return coords


def char_table_abelian(G: Group) -> CharacterTable:
    """Tensor-product characters of a direct product of cyclic groups.

    Values are expressed as powers of the order-|G| root of unity through the
    embedding z_m = z_N^(N/m).
    """
    orders = _cyclic_factor_orders(G)
    if orders is None:
        raise UnsupportedFamily(
            "character table needs a product of cyclic groups"
        )
    N = G.order
    part = conjugacy_classes(G)
    rep_coords = [_mixed_radix(rep, orders) for rep in part.representatives]
    rows = []
    for j in range(N):
        u = _mixed_radix(j, orders)
        values = []
        for coords in rep_coords:
            e = sum((N // m) * ui * xi for m, ui, xi in zip(orders, u, coords))
            values.append(Cyclotomic.from_exponents(N, {e % N: 1}))
        rows.append(CharacterRow(label=f"chi{j}", degree=1, values=tuple(values)))
    return _finish_table(G, rows)


def char_table_dihedral(G: Group) -> CharacterTable:
    """Linear plus two-dimensional characters of the dihedral group of order 2m."""
    if G.family != "dihedral":
        raise UnsupportedFamily(f"expected a dihedral group, got {G.family}")
    m = G.order // 2
    n = G.order
    part = conjugacy_classes(G)

    def decode(i: int) -> tuple[int, int]:
        return divmod(i, m)

    def lin_row(label: str, on_rot, on_ref) -> CharacterRow:
        values = []
        for rep in part.representatives:
            eps, k = decode(rep)
            sign = on_rot(k) if eps == 0 else on_ref(k)
            values.append(Cyclotomic.from_rational(n, sign))
        return CharacterRow(label=label, degree=1, values=tuple(values))

    rows = [
        lin_row("lin0", lambda k: 1, lambda k: 1),
        lin_row("lin1", lambda k: 1, lambda k: -1),
    ]
    if m % 2 == 0:
        rows.append(lin_row("lin2", lambda k: (-1) ** k, lambda k: (-1) ** k))
        rows.append(lin_row("lin3", lambda k: (-1) ** k, lambda k: (-1) ** (k + 1)))
    h_max = (m - 1) // 2 if m % 2 else m // 2 - 1
    for h in range(1, h_max + 1):
        values = []
        for rep in part.representatives:
            eps, k = decode(rep)
            if eps == 1:
                values.append(Cyclotomic.zero(n))
            else:
                # z^(2kh) + z^(-2kh); the two exponents can coincide mod n
                exps: dict[int, int] = {}
                for e in ((2 * k * h) % n, (-2 * k * h) % n):
                    exps[e] = exps.get(e, 0) + 1
                values.append(Cyclotomic.from_exponents(n, exps))
        rows.append(CharacterRow(label=f"dim2_{h}", degree=2, values=tuple(values)))
    return _finish_table(G, rows)


def character_table(G: Group) -> CharacterTable:
    """Dispatch on the group family; cached on the group object."""
    if G._char_table is not None:
        return G._char_table
    if G.family == "cyclic":
        table = char_table_cyclic(G)
    elif G.family == "dihedral":
        table = char_table_dihedral(G)
    elif G.family == "product" and _cyclic_factor_orders(G) is not None:
        table = char_table_abelian(G)
    else:
        raise UnsupportedFamily(
            f"no exact character table for family {G.family!r}"
        )
    G._char_table = table
    return table


def has_character_table(G: Group) -> bool:
    try:
        character_table(G)
    except UnsupportedFamily:
        return False
    return True


@dataclass(frozen=True)
class Spectrum:
    """Exact eigenvalues with multiplicities, distinct and sorted descending.

    per_irreducible keeps the unmerged one-eigenvalue-per-character list
    as (label, degree, value) triples.
    """

    order: int
    conductor: int
    pairs: tuple[tuple[Cyclotomic, int], ...]
    per_irreducible: tuple[tuple[str, int, Cyclotomic], ...]

    def embeddings(self) -> list[float]:
        """Multiplicity-expanded real embeddings, sorted descending."""
        out: list[float] = []
        for value, mult in self.pairs:
            out.extend([value.real_embedding()] * mult)
        out.sort(reverse=True)
        return out

    def frobenius_norm(self) -> float:
        return sum(v.real_embedding() ** 2 * m for v, m in self.pairs) ** 0.5


def spectrum_exact(f: ColourFunction, table: CharacterTable) -> Spectrum:
    """One eigenvalue per irreducible with multiplicity its degree squared.

    The eigenvalue of a row of degree d is (1/d) * sum over classes of
    (class size) * f * (character value), computed exactly; equal values
    across rows are merged.
    """
    if table.group is not f.group:
        raise ValueError("colour function and character table disagree on the group")
    n = f.group.order
    weights = class_weight_vector(f)
    per_irr = []
    merged: dict[Cyclotomic, int] = {}
    for row in table.rows:
        total = Cyclotomic.zero(n)
        for w, chi in zip(weights, row.values):
            if w:
                total = total + chi * w
        lam = total * Fraction(1, row.degree)
        if abs(lam.to_complex().imag) >= REALNESS_TOL:
            raise InternalInconsistency(
                f"eigenvalue {lam} of {row.label} has a non-real embedding"
            )
        per_irr.append((row.label, row.degree, lam))
        merged[lam] = merged.get(lam, 0) + row.degree**2
    pairs = tuple(
        sorted(
            merged.items(),
            key=lambda item: (-item[0].real_embedding(), item[0].coeffs),
        )
    )
    if sum(m for _, m in pairs) != n:
        raise InternalInconsistency("spectrum multiplicities do not sum to |G|")
    return Spectrum(order=n, conductor=n, pairs=pairs, per_irreducible=tuple(per_irr))


def adjacency_matrix(f: ColourFunction) -> list[list[Fraction]]:
    """The symmetric matrix with entry (g, h) equal to f(g * h^-1)."""
    G = f.group
    return [
        [f.values[G.mul(g, G.inv(h))] for h in range(G.order)]
        for g in range(G.order)
    ]


def spectrum_numeric(
    f: ColourFunction, rel_tol: float = 1e-12, max_sweeps: int = 100
) -> list[float]:
    """Adjacency eigenvalues in double precision, sorted descending.

    Independent of the character-sum route: diagonalizes the explicit matrix
    with cyclic Jacobi rotations.
    """
    rows = [[float(v) for v in row] for row in adjacency_matrix(f)]
    return symmetric_eigenvalues(rows, rel_tol=rel_tol, max_sweeps=max_sweeps)


@dataclass(frozen=True)
class SpectrumComparison:
    matches: bool
    max_deviation: float
    threshold: float
    worst_pair: Optional[tuple[float, float]]


def compare_spectra(
    exact: Spectrum, numeric: Sequence[float], tol: float = 1e-8
) -> SpectrumComparison:
    """Match multiplicity-expanded exact embeddings against numeric eigenvalues.

    Both lists are sorted descending and paired off; the verdict is true when
    the largest gap stays below tol * (1 + Frobenius norm).
    """
    expanded = exact.embeddings()
    numeric_sorted = sorted(numeric, reverse=True)
    if len(expanded) != len(numeric_sorted):
        raise ValueError(
            f"{len(expanded)} exact eigenvalues against {len(numeric_sorted)} numeric"
        )
    threshold = tol * (1.0 + exact.frobenius_norm())
    worst = None
    max_dev = 0.0
    for e, v in zip(expanded, numeric_sorted):
        dev = abs(e - v)
        if dev > max_dev:
            max_dev = dev
            worst = (e, v)
    return SpectrumComparison(
        matches=max_dev <= threshold,
        max_deviation=max_dev,
        threshold=threshold,
        worst_pair=worst,
    )
