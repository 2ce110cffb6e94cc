"""Derived subobjects and the intersection submonad of double dualization.

For a: X -> A the derived subobject is the preimage inside X** of the unit
image of A under a**; intersecting over the whole coslice carves out the
monad carrier, whose global elements are the generalized ultrafilters on X.

The intersection normally ranges over the surjective coslice entries only:
the derived subobject of h∘a contains that of a (push the witness through h
by naturality of the unit), so entries that factor through their image are
redundant whenever the image's iso class is itself in the skeleton — always
the case for an "everything up to size n" skeleton.  `full_range=True` keeps
every entry, which is what the bound-stability checks exercise.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .constructions import (MU_CAP_DEFAULT, MonadInstance, attach_mult,
                            coslice_index)
from .dualization import double_dual, double_dual_on_morphism, dual, unit_eta
from .kernel import (FinMorphism, FinObject, InvalidObjectError, Subobject,
                     SubfunctorError, compose_tables, pullback)


@dataclass(frozen=True)
class DerivedSubobject:
    witness: FinMorphism       # a: X -> A
    sub: Subobject             # of X**
    p_map: FinMorphism         # A' -> A, the left pullback leg


def derived_subobject(plugin, a: FinMorphism, budget: int | None = None) -> DerivedSubobject:
    """The pullback of eta_A along a**, presented on the X** side."""
    ass = double_dual_on_morphism(plugin, a, budget)
    eta_a = unit_eta(plugin, a.target, budget)
    pb = pullback(plugin, ass, eta_a, budget)
    sub = pb.subobject
    witness_of = {}
    for u, t in pb.object.elements:
        witness_of[u] = t
    p_table = tuple(witness_of[u] for u in sub.members)
    p_map = FinMorphism(sub.structure, a.target, p_table)
    return DerivedSubobject(a, sub, p_map)


def _intersection_core(plugin, X: FinObject, fp_bound: int, *, full_range: bool,
                       budget: int | None):
    if fp_bound < plugin.recommended_min_fp_bound:
        warnings.warn(
            f"fp_bound {fp_bound} is below the recommended minimum "
            f"{plugin.recommended_min_fp_bound} for {plugin.name}: the intersection "
            "can come out coarser than the monad", stacklevel=3)
    subcat = tuple(plugin.fp_objects_up_to(fp_bound, budget))
    Xs = dual(plugin, X, budget)
    Xss = double_dual(plugin, X, budget)
    coslice = coslice_index(plugin, X, subcat, surjective_only=not full_range,
                            budget=budget)
    xs_ix = Xs.index()
    alive = list(Xss.elements)
    plans = []
    for (ai, a) in coslice.entries:
        A = subcat[ai]
        As = dual(plugin, A, budget)
        a_ix = tuple(A.index()[v] for v in a)
        # a* sends g in A* to g∘a, recorded as positions into X*
        a_star = tuple(xs_ix[tuple(g[p] for p in a_ix)] for g in As.elements)
        eta_inv = {}
        for t in A.elements:
            tp = A.pos(t)
            eta_inv[tuple(g[tp] for g in As.elements)] = t
        alive = [u for u in alive if tuple(u[p] for p in a_star) in eta_inv]
        plans.append((a_star, eta_inv))
    return subcat, coslice, Xss, tuple(alive), plans


def monad_by_intersection(plugin, X: FinObject, fp_bound: int = 4, *,
                          budget: int | None = None, full_range: bool = False,
                          build_mult: bool = True, mult_depth: int = 1,
                          mu_cap: int = MU_CAP_DEFAULT) -> MonadInstance:
    """TX = the wide intersection of all derived subobjects inside X**."""
    subcat, coslice, Xss, members, plans = _intersection_core(
        plugin, X, fp_bound, full_range=full_range, budget=budget)
    psi = []
    leg_specs = [(members, Xss)]
    for k, (ai, _) in enumerate(coslice.entries):
        a_star, eta_inv = plans[k]
        col = tuple(eta_inv[tuple(u[p] for p in a_star)] for u in members)
        psi.append(col)
        leg_specs.append((col, subcat[ai]))
    TX = plugin.initial_structure(members, leg_specs)
    embedding = FinMorphism(TX, Xss, members)
    eta = unit_eta(plugin, X, budget)
    member_pos = TX.index()
    for x in X.elements:
        if eta(x) not in member_pos:
            raise InvalidObjectError("the unit escaped the intersection (construction bug)")
    unit = FinMorphism(X, TX, tuple(eta(x) for x in X.elements))
    inst = MonadInstance(plugin, X, "dual2", subcat, coslice, TX, Xss, embedding,
                         tuple(psi), unit)
    if build_mult and mult_depth > 0:
        attach_mult(inst,
                    lambda TXobj: monad_by_intersection(plugin, TXobj, fp_bound,
                                                        budget=budget,
                                                        full_range=full_range,
                                                        mult_depth=mult_depth - 1),
                    mu_cap, budget)
    return inst


def t_on_morphism(plugin, inst_x: MonadInstance, inst_y: MonadInstance,
                  f: FinMorphism, budget: int | None = None) -> FinMorphism:
    """Tf as the restriction of f** to the intersection carriers.

    Raises SubfunctorError when f** fails to map TX into TY, which signals a
    bound problem; it is reported, never silently repaired.
    """
    if inst_x.construction != "dual2" or inst_y.construction != "dual2":
        raise InvalidObjectError("t_on_morphism works on intersection instances")
    if f.source != inst_x.base or f.target != inst_y.base:
        raise InvalidObjectError("morphism endpoints do not match the instances")
    fss = double_dual_on_morphism(plugin, f, budget)
    ty = set(inst_y.carrier)
    table = []
    for u in inst_x.carrier:
        v = fss(u)
        if v not in ty:
            raise SubfunctorError(
                f"not a subfunctor at this bound: image of {u!r} under f** "
                "missed the target carrier")
        table.append(v)
    return FinMorphism(inst_x.carrier_object, inst_y.carrier_object, tuple(table))


def list_d_ultrafilters(plugin, X: FinObject, fp_bound: int = 4, *,
                        budget: int | None = None) -> list[tuple]:
    """The elements of TX with their plugin-specific collection renderings."""
    inst = monad_by_intersection(plugin, X, fp_bound, budget=budget, build_mult=False)
    Xs = dual(plugin, X, budget)
    out = []
    for u in inst.carrier:
        view = plugin.collection_view(X, Xs, u)
        out.append((u, view))
    return out
