"""Monomial maps that separate period-map fibers, stratum by stratum.

Relations among the monodromy logarithms cut out the fibers of the orbit;
non-negative generators of the orthogonal complement give monomials that
separate them, and the relations survive into deeper strata.  The lattice
refinement makes the fibers connected at the exponent level.

Run:  python3 demos/03_monomial_maps.py
"""

from hodgecalc import (
    MonomialMap, compatibility_check, connected_refinement, monomial_map,
    stratum_monomial_map,
)
from hodgecalc.schemas import load_fixture

spec = load_fixture("dollar-bill").obj

mm = monomial_map(spec)
print("full monomial map:", ", ".join(mm.monomial_strings()))

for subset in ([0], [1], [2], [0, 1]):
    sm = stratum_monomial_map(spec, subset)
    label = "{" + ",".join(str(i + 1) for i in subset) + "}"
    mons = ", ".join(sm.monomial_strings()) or "(constant)"
    print(f"stratum {label}: {mons}")

print("\nnested compatibility:")
for small, large in (([0], [0, 1]), ([2], [0, 2]), ([1], [1, 2])):
    rep = compatibility_check(spec, small, large)
    print(f"  {small} < {large}: {'pass' if rep.passed else 'FAIL'}")

dup = load_fixture("duplicated-pair").obj
dmm = monomial_map(dup)
print("\nduplicated direction: map =", ", ".join(dmm.monomial_strings()))

ref = connected_refinement(MonomialMap(((2,),), (0,)))
print("refining t -> t^2: covering degree factors", ref.invariant_factors,
      "refined map", ref.refined.monomial_strings())
