"""Ultrafilters on a finite set, three ways.

The monad of generalized ultrafilters is computed by intersecting derived
subobjects inside the double powerset, as a limit of compatible families over
the coslice, and as the smallest submonad of the product monad; on a finite
set all three give back the principal ultrafilters.
"""
from codensity import (codensity_by_limit, codensity_by_smonad,
                       compare_constructions, get_plugin, monad_by_intersection)
from codensity.dualization import dual

setp = get_plugin("set")
X = setp.obj(("a", "b", "c"), ())

print("X =", X.elements)
print()

inst = monad_by_intersection(setp, X, fp_bound=4)
print(f"double-dual intersection: |TX| = {inst.carrier_object.size}")
Xs = dual(setp, X)
for u in inst.carrier:
    print("   ", setp.collection_view(X, Xs, u))

lim = codensity_by_limit(setp, X, setp.fp_objects_up_to(4), image_closed=True)
print(f"limit of the coslice:     |TX| = {lim.carrier_object.size}")

sm = codensity_by_smonad(setp, X, fp_bound=4)
print(f"smallest submonad of S:   |TX| = {sm.carrier_object.size}")

report = compare_constructions(setp, X, fp_bound=4)
print()
print("three-way agreement:", "MATCH" if report.match else "MISMATCH")
for c in report.checks:
    print(f"  [{'ok' if c.ok else 'XX'}] {c.name}")

print()
print("the unit is injective and lands on the principal collections:")
for x in X.elements:
    print(f"  {x} |-> {setp.collection_view(X, Xs, inst.unit(x))}")
