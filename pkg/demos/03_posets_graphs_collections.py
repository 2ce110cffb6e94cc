"""Collection descriptions of the monad on posets and graphs.

On a poset the monad elements are the nonempty prime collections of up-sets
closed under finite intersections; on a graph they are vertex ultrafilters,
two of which form an edge exactly when every pair of members meets an edge.
"""
from codensity import get_plugin, monad_by_intersection
from codensity.characterize import graph_edge_predicate
from codensity.dualization import dual

pos = get_plugin("pos")
V = pos.obj_from_leq(("lo", "a", "b"), [("lo", "a"), ("lo", "b")])
inst = monad_by_intersection(pos, V, fp_bound=4)
Vs = dual(pos, V)
print(f"poset {V.elements} with bottom below two tops: |TX| = {inst.carrier_object.size}")
for u in inst.carrier:
    print("   ", pos.collection_view(V, Vs, u))
print("TX is ordered by inclusion of collections:")
for u in inst.carrier:
    for v in inst.carrier:
        if u != v and pos.leq(inst.carrier_object, u, v):
            print(f"    {inst.carrier_object.pos(u)} < {inst.carrier_object.pos(v)}")

print()
gra = get_plugin("gra")
P = gra.obj_from_edges((0, 1, 2), [(0, 1), (1, 2)])
gi = monad_by_intersection(gra, P, fp_bound=4)
TX = gi.carrier_object
Ps = dual(gra, P)
views = {u: gra.collection_view(P, Ps, u) for u in gi.carrier}
print(f"path graph 0-1-2: |TX| = {TX.size}")
print("edges of TX versus the members-meet-an-edge predicate:")
for u in gi.carrier:
    for v in gi.carrier:
        got = gra.has_edge(TX, u, v)
        want = graph_edge_predicate(gra, P, views[u], views[v])
        tag = "edge" if got else "    "
        assert got == want
        print(f"    {TX.pos(u)}--{TX.pos(v)}  {tag}  (predicate agrees)")
