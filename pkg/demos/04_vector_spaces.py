"""Restricting the object family changes the monad on vector spaces.

Over the single line K the limit collects all scalar-preserving functions on
the dual, strictly more than the double dual; adding the plane K^2 forces
additivity and recovers the double dual on the nose.
"""
from codensity import codensity_by_limit, get_plugin
from codensity.characterize import kvec_homogeneous_predicate
from codensity.dualization import double_dual, dual

vec = get_plugin("vec", q=2)
V = vec.space(2)
Vs = dual(vec, V)

line_only = codensity_by_limit(vec, V, [vec.space(1)], build_mult=False)
with_plane = codensity_by_limit(vec, V, [vec.space(1), vec.space(2)], build_mult=False)

print(f"X = F2^2, |X**| = {double_dual(vec, V).size}")
print(f"family {{K}}:      |TX| = {line_only.carrier_object.size}")
print(f"family {{K, K^2}}: |TX| = {with_plane.carrier_object.size}")
print()

entry_of = {t: k for k, (_, t) in enumerate(line_only.coslice.entries)}
print("each family over {K} is a scalar-preserving map on the dual:")
for fam in line_only.carrier:
    h = tuple(fam[entry_of[g]] for g in Vs.elements)
    flat = "".join(str(v[0]) for v in h)
    linear = h in double_dual(vec, V).elements
    print(f"  values {flat}  homogeneous: "
          f"{kvec_homogeneous_predicate(vec, Vs, h)}  linear: {linear}")

print()
print("over F3 the count separates even at dimension one on the nose:")
vec3 = get_plugin("vec", q=3)
W = vec3.space(1)
w_line = codensity_by_limit(vec3, W, [vec3.space(1)], build_mult=False)
print(f"X = F3, family {{K}}: |TX| = {w_line.carrier_object.size} "
      f"(the three linear maps; homogeneity over F3 forces linearity in dim 1)")
