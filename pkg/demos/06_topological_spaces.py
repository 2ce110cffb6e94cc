"""Finite topological spaces: ultrafilters again, and prime open filters.

For all finite spaces the monad carrier is the ultrafilter set with the
topology generated by the sets of filters containing a fixed open; for T0
spaces (with the Sierpinski cogenerator) the carrier becomes the prime
filters of the open-set lattice.
"""
from codensity import codensity_by_limit, codensity_by_smonad, get_plugin
from codensity.characterize import (is_prime_open_filter,
                                    smonad_collection_view)

top = get_plugin("top")
X = top.obj_from_opens((0, 1, 2), [(0,), (0, 1)])
inst = codensity_by_smonad(top, X, fp_bound=4, build_mult=False)
TX = inst.carrier_object
print(f"three-point space with opens {top.opens(X)}:")
print(f"  |TX| = {TX.size} ultrafilters, {len(top.opens(TX))} opens on TX")

lim = codensity_by_limit(top, X, top.fp_objects_up_to(4), image_closed=True,
                         build_mult=False)
print(f"  limit route agrees on size: {lim.carrier_object.size == TX.size}")

print()
top0 = get_plugin("top0")
sier = top0.obj_from_opens((0, 1), [(1,)])
s_inst = codensity_by_smonad(top0, sier, fp_bound=4, build_mult=False)
homs = top0.hom_tables(sier, top0.cogenerator())
print(f"Sierpinski space: |TX| = {s_inst.carrier_object.size}, "
      f"opens on TX: {len(top0.opens(s_inst.carrier_object))}")
print("its elements are the prime open filters:")
for u in s_inst.carrier:
    view = smonad_collection_view(top0, sier, homs, u)
    print(f"  {view}  prime open filter: {is_prime_open_filter(sier, top0, view)}")
