"""Sets with a Z2 action: ultrafilters with the transported action.

The monad carrier is the plain ultrafilter set, and the action moves a
collection U to {R | mR in U} where mR pulls members back along the action.
"""
from codensity import compare_constructions, get_plugin, monad_by_intersection
from codensity.characterize import mset_action_predicate
from codensity.dualization import dual

mset = get_plugin("mset")  # Z2 by default
X = mset.from_action(("x", "y", "z"),
                     {("e", "x"): "x", ("e", "y"): "y", ("e", "z"): "z",
                      ("g", "x"): "y", ("g", "y"): "x", ("g", "z"): "z"})

inst = monad_by_intersection(mset, X, fp_bound=4)
TX = inst.carrier_object
Xs = dual(mset, X)
print(f"Z2-set with one swapped pair and one fixed point: |TX| = {TX.size}")
for u in inst.carrier:
    view = mset.collection_view(X, Xs, u)
    moved = mset.collection_view(X, Xs, mset.act(TX, "g", u))
    predicted = mset_action_predicate(mset, X, view, "g")
    assert moved.members == predicted.members
    print(f"  {view}")
    print(f"    g . U = {moved} (matches the pullback formula)")

print()
rep = compare_constructions(mset, X, fp_bound=4)
print("three-way agreement:", "MATCH" if rep.match else "MISMATCH")
