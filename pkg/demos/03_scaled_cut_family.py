"""The scaled-cut norming family and its basis constant.

H_F is the closure of the unit vectors and the spreads of the first piece's
family under "cut below a member position, then scale by 1/K".  Cutting
always costs a factor 1/K, which is exactly what pins the prefix-projection
constant at K.
"""

from fractions import Fraction

from csw import (
    SparseVector,
    basis_constant,
    build_K_family,
    build_scheme,
    norm,
    validate_type,
)

tiny = build_scheme(validate_type([1, 2], [2], [0]))
family = build_K_family(tiny, 2, scale_cap=1)
print("closure on the two-point scheme:")
for f in family.functionals_for(tiny.top):
    print(f"  {f.label():28s} {f.vector}")

wide = build_scheme(validate_type([1, 8], [8], [0]))
family8 = build_K_family(wide, 2, scale_cap=1)
print(f"\nwidth-8 family has {len(family8.functionals_for(wide.top))} functionals")

full = SparseVector({i: 1 for i in range(8)})
print("norm of e_0 + ... + e_7:", norm(full, family8))

result = basis_constant(family8)
print(f"\nbasis constant: {result.value} (cut {result.cut}, via {result.functional_label})")
print("attaining unit vector:", result.attaining)
print("  its norm:", norm(result.attaining, family8))
print("  prefix norm at the witness cut:",
      norm(result.attaining.restrict_below(result.cut), family8))

for K in (Fraction(2), Fraction(3, 2)):
    fam = build_K_family(wide, K, scale_cap=1)
    print(f"K = {K}: constant = {basis_constant(fam).value} (bounded by K)")
