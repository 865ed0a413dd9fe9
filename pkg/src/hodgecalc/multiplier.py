"""Monomial multiplier ideals of weight functions log(sum |z_j|^a_j)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple     # exponent tuples, a divisibility antichain
    degree_bound: int
    truncated: bool

    def monomial_strings(self):
        out = []
        for beta in self.generators:
            factors = []
            for j, e in enumerate(beta):
                if e == 1:
                    factors.append(f"z{j + 1}")
                elif e:
                    factors.append(f"z{j + 1}^{e}")
            out.append("*".join(factors) if factors else "1")
        return tuple(out)


def multiplier_ideal_monomials(alpha, degree_bound: int = 24) -> MonomialIdeal:
    """Minimal monomial generators of {z^beta : sum (beta_j + 1)/alpha_j > 1}.

    The membership set is upward closed, so the minimal generators are the
    members none of whose single-step predecessors is a member; a warning
    flag reports when the degree bound may have cut off generators.
    """
    alpha = [Fraction(a) for a in alpha]
    if any(a <= 0 for a in alpha):
        raise ValueError("weights must be positive")
    n = len(alpha)

    def member(beta) -> bool:
        return sum(Fraction(b + 1, 1) / a for b, a in zip(beta, alpha)) > 1

    gens = []
    for beta in product(range(degree_bound + 1), repeat=n):
        if sum(beta) > degree_bound or not member(beta):
            continue
        minimal = True
        for j in range(n):
            if beta[j] and member(beta[:j] + (beta[j] - 1,) + beta[j + 1:]):
                minimal = False
                break
        if minimal:
            gens.append(beta)
    # truncation: a minimal generator could exist just beyond the bound when
    # some boundary non-member has all-member successors outside the range
    truncated = False
    for beta in product(range(degree_bound + 1), repeat=n):
        if sum(beta) == degree_bound and not member(beta):
            truncated = True
            break
    gens.sort()
    return MonomialIdeal(tuple(gens), degree_bound, truncated)
