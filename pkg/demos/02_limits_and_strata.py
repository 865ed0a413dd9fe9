"""Restriction of the Chern form to boundary strata, exactly.

Along a stratum t_i -> 0 the Chern form converges to the form of the
stratum degeneration; here the deviations are exact rational numbers
decaying like 1/scale, and the subset-leading part of the metric polynomial
factors through the stratum.

Run:  python3 demos/02_limits_and_strata.py
"""

from fractions import Fraction

from hodgecalc import hodge_metric_polynomial, restriction_limit_check, stratum_factorization
from hodgecalc.schemas import load_fixture

spec = load_fixture("dollar-bill").obj
p = hodge_metric_polynomial(spec)

for subset, label in (([2], "t3 -> 0"), ([1, 2], "t2, t3 -> 0")):
    fac = stratum_factorization(p, subset, spec)
    print(f"stratum {label}:")
    print(f"  leading part   = ({fac.p_i}) * ({fac.p_ic})")
    print(f"  remainder      = {fac.remainder}")
    print(f"  stratum metric = {fac.stratum_poly}")
    rep = restriction_limit_check(spec, subset,
                                  scales=[Fraction(10) ** e for e in range(1, 9)])
    print("  deviations along the first ray:")
    for s, d in zip(rep.scales, rep.deviations[0]):
        print(f"    scale {str(s):>9}: {d}")
    print(f"  final max deviation {rep.final_max_deviation} "
          f"(pass: {rep.passed})\n")

split = load_fixture("commuting-pair").obj
rep = restriction_limit_check(split, [0],
                              scales=[Fraction(10) ** e for e in range(1, 5)])
print("split abelian surface, t1 -> 0: deviations are exactly zero:",
      rep.exact_zero)
