"""Symbolic Chern-class algebra: Schur and Segre polynomials.

Symbols live in Q[c_1..c_r] with c_i of weighted degree i; c_0 = 1 and c_j
vanishes outside 0..r.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidPartition
from .polynomials import MultiPoly, poly_mat_det


@dataclass(frozen=True)
class ChernSymbol:
    """Polynomial in the Chern classes of a rank-r bundle."""

    rank: int
    poly: MultiPoly

    def weighted_degree(self) -> int:
        return self.poly.weighted_degree(tuple(range(1, self.rank + 1)))

    def is_weighted_homogeneous(self) -> bool:
        w = tuple(range(1, self.rank + 1))
        degs = {sum(wi * e for wi, e in zip(w, exp)) for exp in self.poly.terms}
        return len(degs) <= 1

    def __str__(self):
        return self.poly.to_string("c")

    def __eq__(self, other):
        return (isinstance(other, ChernSymbol) and self.rank == other.rank
                and self.poly == other.poly)


def chern_generator(rank: int, i: int) -> ChernSymbol:
    """The symbol c_i, with the conventions c_0 = 1 and c_i = 0 outside 0..r."""
    if i == 0:
        return ChernSymbol(rank, MultiPoly.const(rank, 1))
    if i < 0 or i > rank:
        return ChernSymbol(rank, MultiPoly.zero(rank))
    return ChernSymbol(rank, MultiPoly.variable(rank, i - 1))


def schur_polynomial(partition, rank: int, *, pivot_row: int = 0) -> ChernSymbol:
    """Determinant expansion of the Schur symbol of a partition.

    The (i, j) entry of the underlying matrix is c_{lambda_i + j - i}; the
    pivot_row argument only changes the expansion order (used to cross-check
    the determinant by an independent expansion) and never the value.
    """
    lam = [int(x) for x in partition]
    if any(a < 0 for a in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise InvalidPartition(f"{partition} is not a partition")
    if lam and lam[0] > rank:
        raise InvalidPartition(f"part {lam[0]} exceeds the rank {rank}")
    n = len(lam)
    if n == 0:
        return ChernSymbol(rank, MultiPoly.const(rank, 1))
    entries = [[chern_generator(rank, lam[i] + j - i).poly for j in range(n)]
               for i in range(n)]
    if pivot_row:
        r0 = pivot_row % n
        order = [r0] + [i for i in range(n) if i != r0]
        sign = _perm_sign(order)
        entries = [entries[i] for i in order]
        poly = poly_mat_det(entries)
        return ChernSymbol(rank, poly if sign > 0 else -poly)
    return ChernSymbol(rank, poly_mat_det(entries))


def _perm_sign(order) -> int:
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def segre_polynomial(degree: int, rank: int) -> ChernSymbol:
    """Segre symbols from the tautological-relation recursion
    s_q = c_1 s_{q-1} - c_2 s_{q-2} + ...; s_0 = 1."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    table = [MultiPoly.const(rank, 1)]
    for q in range(1, degree + 1):
        acc = MultiPoly.zero(rank)
        for i in range(1, min(q, rank) + 1):
            term = chern_generator(rank, i).poly * table[q - i]
            acc = acc + (term if i % 2 == 1 else -term)
        table.append(acc)
    return ChernSymbol(rank, table[degree])


def grothendieck_defect(q: int, rank: int) -> ChernSymbol:
    """sum_i (-1)^i c_i s_{q-i}; identically zero for q >= 1."""
    acc = MultiPoly.zero(rank)
    for i in range(0, min(q, rank) + 1):
        term = chern_generator(rank, i).poly * segre_polynomial(q - i, rank).poly
        acc = acc + (term if i % 2 == 0 else -term)
    return ChernSymbol(rank, acc)
