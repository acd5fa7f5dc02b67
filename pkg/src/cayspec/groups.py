"""Finite group engine: indexed elements, family constructors, conjugacy classes.

Elements are dense indices 0..n-1 with the identity fixed at index 0.
Multiplication is backed by a precomputed table for small orders and by
permutation (or componentwise) arithmetic above the table limit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union

from cayspec.errors import ClosureCapExceeded

TABLE_LIMIT = 4096
CLOSURE_CAP = 10000

MultisetLike = Union[Iterable[int], Mapping[int, int]]


@dataclass(frozen=True)
class ConjugacyClassPartition:
    """Partition of the element indices into conjugacy classes.

    Classes are ordered by their least element, so the identity class comes
    first; each class tuple is ascending.
    """

    classes: tuple[tuple[int, ...], ...]
    representatives: tuple[int, ...]
    class_of: tuple[int, ...]


class Group:
    """A finite group on indices 0..order-1 with identity 0.

    Instances are immutable after construction and safe to share across
    workers; construct through the make_* functions.
    """

    def __init__(
        self,
        order: int,
        names: tuple[str, ...],
        family: str,
        *,
        mul_table: Optional[tuple[tuple[int, ...], ...]] = None,
        perms: Optional[tuple[tuple[int, ...], ...]] = None,
        factors: Optional[tuple["Group", "Group"]] = None,
        aliases: Optional[dict[str, int]] = None,
    ):
        self.order = order
        self.names = names
        self.family = family
        self._table = mul_table
        self._perms = perms
        self._perm_index = (
            {p: i for i, p in enumerate(perms)} if perms is not None else None
        )
        self.factors = factors
        self._name_index = {name: i for i, name in enumerate(names)}
        if aliases:
            for alias, idx in aliases.items():
                self._name_index.setdefault(alias, idx)
        self._inverse = tuple(self._find_inverse(i) for i in range(order))
        self._classes: Optional[ConjugacyClassPartition] = None
        self._char_table = None  # filled lazily by spectra.character_table

    # -- arithmetic --------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._table is not None:
            return self._table[i][j]
        if self.family == "cyclic":
            return (i + j) % self.order
        if self.family == "dihedral":
            m = self.order // 2
            e1, k1 = divmod(i, m)
            e2, k2 = divmod(j, m)
            k = (k2 - k1) % m if e2 else (k1 + k2) % m
            return (e1 ^ e2) * m + k
        if self.factors is not None:
            left, right = self.factors
            nr = right.order
            return left.mul(i // nr, j // nr) * nr + right.mul(i % nr, j % nr)
        pi, pj = self._perms[i], self._perms[j]
        return self._perm_index[tuple(pi[pj[k]] for k in range(len(pi)))]

    def inv(self, i: int) -> int:
        return self._inverse[i]

    def _find_inverse(self, i: int) -> int:
        if self._table is None and self.family == "cyclic":
            return (-i) % self.order
        if self._table is None and self.family == "dihedral":
            m = self.order // 2
            eps, k = divmod(i, m)
            return i if eps else (-k) % m
        if self.factors is not None and self._table is None:
            left, right = self.factors
            nr = right.order
            return left.inv(i // nr) * nr + right.inv(i % nr)
        if self._perms is not None and self._table is None:
            p = self._perms[i]
            q = [0] * len(p)
            for a, b in enumerate(p):
                q[b] = a
            return self._perm_index[tuple(q)]
        for j in range(self.order):
            if self.mul(i, j) == 0:
                return j
        raise ValueError(f"element {i} has no inverse; not a group")

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    # -- names --------------------------------------------------------------

    def element_name(self, i: int) -> str:
        return self.names[i]

    def element_index(self, name: str) -> int:
        key = name.strip()
        if key in self._name_index:
            return self._name_index[key]
        compact = key.replace(" ", "")
        if compact in self._name_index:
            return self._name_index[compact]
        raise KeyError(f"unknown element name {name!r} in this group")

    def __repr__(self):
        return f"<Group {self.family} order={self.order}>"


def _table_from_rule(order: int, rule) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(rule(i, j) for j in range(order)) for i in range(order))


def make_cyclic(n: int) -> Group:
    """Additive group of integers modulo n; element k is named 'k'."""
    if n < 1:
        raise ValueError(f"cyclic group order must be positive, got {n}")
    names = tuple(str(k) for k in range(n))
    table = _table_from_rule(n, lambda i, j: (i + j) % n) if n <= TABLE_LIMIT else None
    return Group(n, names, "cyclic", mul_table=table)


def _dihedral_name(m: int, i: int) -> str:
    eps, k = divmod(i, m)
    if eps == 0:
        return "1" if k == 0 else ("a" if k == 1 else f"a^{k}")
    return "b" if k == 0 else ("b*a" if k == 1 else f"b*a^{k}")


def make_dihedral(m: int) -> Group:
    """Dihedral group of order 2m: rotations a^k then reflections b*a^k."""
    if m < 1:
        raise ValueError(f"dihedral parameter must be positive, got {m}")
    order = 2 * m

    def rule(i: int, j: int) -> int:
        e1, k1 = divmod(i, m)
        e2, k2 = divmod(j, m)
        k = (k2 - k1) % m if e2 else (k1 + k2) % m
        return (e1 ^ e2) * m + k

    names = tuple(_dihedral_name(m, i) for i in range(order))
    aliases = {"a^0": 0, "a^1": 1 % m, "b*a^0": m, "b*a^1": m + (1 % m)}
    for k in range(m):
        aliases.setdefault(f"ba^{k}", m + k)
        if k == 1:
            aliases.setdefault("ba", m + 1)
    table = _table_from_rule(order, rule) if order <= TABLE_LIMIT else None
    return Group(order, names, "dihedral", mul_table=table, aliases=aliases)


def make_product(left: Group, right: Group) -> Group:
    """Direct product with componentwise multiplication; names are '(x,y)'."""
    order = left.order * right.order
    nr = right.order
    names = tuple(
        f"({left.names[i]},{right.names[j]})" for i in range(left.order) for j in range(nr)
    )
    table = None
    if order <= TABLE_LIMIT:
        table = _table_from_rule(
            order,
            lambda i, j: left.mul(i // nr, j // nr) * nr + right.mul(i % nr, j % nr),
        )
    return Group(order, names, "product", mul_table=table, factors=(left, right))


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = perm[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = perm[nxt]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) if cycles else "e"


def make_from_generators(perms: Sequence[Sequence[int]], cap: int = CLOSURE_CAP) -> Group:
    """Group generated by permutations, closed breadth-first from the identity."""
    gens = [tuple(p) for p in perms]
    npoints = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != npoints or sorted(g) != list(range(npoints)):
            raise ValueError(f"{g} is not a permutation of 0..{npoints - 1}")
    ident = tuple(range(npoints))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[g[k]] for k in range(npoints))
            if y not in index:
                if len(elements) >= cap:
                    raise ClosureCapExceeded(
                        f"generator closure exceeded the cap of {cap} elements"
                    )
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    order = len(elements)
    names = tuple(_cycle_name(p) for p in elements)
    perms_t = tuple(elements)
    table = None
    if order <= TABLE_LIMIT:
        table = _table_from_rule(
            order,
            lambda i, j: index[
                tuple(perms_t[i][perms_t[j][k]] for k in range(npoints))
            ],
        )
    return Group(order, names, "generated", mul_table=table, perms=perms_t)


def power(G: Group, g: int, k: int) -> int:
    """g**k by square and multiply; k may be negative or zero."""
    if k < 0:
        g = G.inv(g)
        k = -k
    result = 0
    base = g
    while k:
        if k & 1:
            result = G.mul(result, base)
        base = G.mul(base, base)
        k >>= 1
    return result


def conjugacy_classes(G: Group) -> ConjugacyClassPartition:
    """Orbit partition under conjugation, cached on the group."""
    if G._classes is not None:
        return G._classes
    n = G.order
    class_of = [-1] * n
    classes: list[tuple[int, ...]] = []
    for g in range(n):
        if class_of[g] != -1:
            continue
        orbit = {g}
        frontier = [g]
        while frontier:
            h = frontier.pop()
            for x in range(n):
                c = G.mul(G.mul(x, h), G.inv(x))
                if c not in orbit:
                    orbit.add(c)
                    frontier.append(c)
        idx = len(classes)
        members = tuple(sorted(orbit))
        classes.append(members)
        for h in members:
            class_of[h] = idx
    partition = ConjugacyClassPartition(
        classes=tuple(classes),
        representatives=tuple(c[0] for c in classes),
        class_of=tuple(class_of),
    )
    G._classes = partition
    return partition


def multiplicities(G: Group, S: MultisetLike) -> tuple[int, ...]:
    """Normalize a multiset of element indices to a per-index count vector."""
    counts = [0] * G.order
    if isinstance(S, Mapping):
        items = S.items()
    else:
        items = ((g, 1) for g in S)
    for g, m in items:
        if not 0 <= g < G.order:
            raise ValueError(f"element index {g} out of range")
        if m < 0:
            raise ValueError(f"negative multiplicity for element {g}")
        counts[g] += m
    return tuple(counts)


def is_normal_subset(G: Group, S: MultisetLike) -> bool:
    """True iff the multiplicity function of S is constant on conjugacy classes."""
    counts = multiplicities(G, S)
    for cls in conjugacy_classes(G).classes:
        first = counts[cls[0]]
        if any(counts[g] != first for g in cls[1:]):
            return False
    return True
