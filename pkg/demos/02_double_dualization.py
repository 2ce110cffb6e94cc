"""The dual functor and the double-dualization monad across categories.

Duals of posets are their up-set posets, duals of semilattices their prime
up-sets, duals of graphs are complete graphs on the vertex powerset, and for
vector spaces the dual is the usual space of functionals.
"""
from codensity import get_plugin, unit_eta
from codensity.dualization import (check_doubledual_monad_laws, double_dual,
                                   dual, eta_is_injective)

pos = get_plugin("pos")
chain = pos.obj_from_leq((0, 1), [(0, 1)])
chain_dual = dual(pos, chain)
print(f"2-chain in pos: |X*| = {chain_dual.size} (the chain of up-sets)")
print(f"                |X**| = {double_dual(pos, chain).size}")

jsl = get_plugin("jsl")
print(f"2-chain in jsl: |X*| = {dual(jsl, jsl.two_chain()).size} (prime up-sets only)")

gra = get_plugin("gra")
edge = gra.obj_from_edges((0, 1), [(0, 1)])
H = dual(gra, edge)
print(f"single edge in gra: |X*| = {H.size}, complete: {gra.is_complete(H)}")

vec = get_plugin("vec", q=2)
V = vec.space(2)
eta = unit_eta(vec, V)
print(f"F2^2: |X**| = {double_dual(vec, V).size}, unit bijective: "
      f"{eta.is_injective() and eta.is_surjective()}")

print()
print("the unit is monic everywhere (size <= 3 shown):")
for name in ("set", "par", "pos", "jsl", "gra", "mset", "sigma_str"):
    plugin = get_plugin(name)
    verdicts = [eta_is_injective(plugin, X) for X in plugin.fp_objects_up_to(3)]
    print(f"  {name:10s} {sum(verdicts)}/{len(verdicts)} objects")

print()
print("monad laws at the smallest instances:")
for name, obj in (("set", get_plugin("set").obj(("*",), ())),
                  ("jsl", jsl.two_chain()),
                  ("vec", vec.space(1))):
    plugin = get_plugin(name) if name != "vec" else vec
    laws = check_doubledual_monad_laws(plugin, obj)
    for law, verdict in laws.items():
        print(f"  {name:4s} {law}: {verdict}")
