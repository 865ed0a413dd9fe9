"""Pointwise curvature positivity: models, symmetric powers, horizontal
directions.

Run:  python3 demos/04_curvature_positivity.py
"""

from hodgecalc import (
    bisectional_curvature, curvature_from_model, flat_directions,
    graded_end_algebra, kernel_dimension, phs_weight1, phs_weight2,
    projectivized_chern_form, sectional_quartic, segre_polynomial,
    sym_power_model,
)
from hodgecalc.horizontal import direction_with_block
from hodgecalc.matrices import Mat
from hodgecalc.normpos import sym_subspace_basis, sym_vector
from hodgecalc.lmhs import hermitian_psd_status
from hodgecalc.rationals import ONE, ZERO
from hodgecalc.schemas import load_fixture

model = load_fixture("grassmannian-g24").obj
theta = curvature_from_model(model)
print("curvature at a unit vector, elementary displacement:",
      theta.value([1, 0], [1, 0, 0, 0]))
_, flat = flat_directions(model, [1, 0])
print("flat directions through the point:", flat)

s2 = sym_power_model(model, 2)
theta2 = curvature_from_model(s2)
v, _ = sym_vector((0, 1), 2)
psd, rank_, pd = hermitian_psd_status(theta2.horizontal_form(v))
print("symmetric square at a split point: positive definite =", pd)

form = projectivized_chern_form(s2, [ONE, ZERO, ZERO, ZERO],
                                fiber_subspace=sym_subspace_basis(2, 2))
print("projectivized form at the squared point: psd =", form.psd,
      "horizontal kernel =", form.horizontal_kernel_dim)

print("\nSegre symbols:", ", ".join(str(segre_polynomial(d, 3))
                                    for d in (1, 2, 3)))

ge = graded_end_algebra(phs_weight1(2))
xi = direction_with_block(ge, Mat.diag([1, 1]))
print("\nweight-1 horizontal directions (genus 2):")
print("  self bisectional curvature:", bisectional_curvature(ge, xi, xi))
print("  lowering-kernel dimension:", kernel_dimension(ge, xi))
q = sectional_quartic(ge, xi)
print("  quartic value:", q.value)

ge2 = graded_end_algebra(phs_weight2(2, 3))
for r in (1, 2):
    xi = direction_with_block(ge2, Mat.from_rows(
        [[1 if (i == j and i < r) else 0 for j in range(2)] for i in range(3)]))
    print(f"weight-2 block rank {r}: kernel dimension",
          kernel_dimension(ge2, xi))
