"""Walk through the three-parameter genus-2 boundary degeneration.

The bundled "dollar-bill" document carries three commuting rank-one
monodromy logarithms.  This script computes the limiting mixed structure,
the metric of the extended determinant bundle in the coordinates
x_j = -log|t_j|, and exact curvature samples.

Run:  python3 demos/01_boundary_metric.py
"""

from fractions import Fraction

from hodgecalc import (
    chern_form_at, hodge_metric_matrix, hodge_metric_polynomial,
    verify_polarized_lmhs,
)
from hodgecalc.schemas import load_fixture

spec = load_fixture("dollar-bill").obj

print("validation:")
for check in verify_polarized_lmhs(spec).checks:
    print(f"  [{'ok' if check.passed else 'XX'}] {check.name}")

wf, bi = spec.lmhs()
print("\ngraded dimensions of W(N1+N2+N3):", wf.graded_dims)
print("Hodge numbers of the limit:", bi.hodge_numbers())

mm = hodge_metric_matrix(spec)
print("\nmetric matrix on the canonical frame:")
for _, _, block in mm.blocks:
    for row in block:
        print("   [" + ", ".join(str(e) for e in row) + "]")

p = hodge_metric_polynomial(spec)
print("\nmetric polynomial P =", p.p)

for x in ([1, 1, 1], [2, 3, 5], [Fraction(1, 2), 1, 7]):
    s = chern_form_at(p, x)
    print(f"\ncurvature matrix at x = {[str(v) for v in x]} "
          f"(psd={s.psd}, rank={s.rank}):")
    for i in range(s.g.rows):
        print("   [" + ", ".join(str(s.g[i, j]) for j in range(s.g.cols)) + "]")
