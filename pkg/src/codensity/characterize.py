"""Closed-form membership predicates used as independent oracles against the
computed monads.

Every predicate works on the rendered collection view, never on the raw
element tables, so a rendering bug cannot mask an engine bug or vice versa.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .kernel import FinObject, canon_key


@dataclass(frozen=True)
class CollectionOfSubsets:
    """A collection of subsets of a finite base carrier."""
    base_carrier: tuple
    members: frozenset  # frozenset of frozensets

    def __post_init__(self):
        base = set(self.base_carrier)
        for m in self.members:
            if not m <= base:
                raise ValueError("member outside the base carrier")

    def __str__(self):
        ms = sorted(self.members, key=lambda s: (len(s), sorted(map(canon_key, s))))
        body = ", ".join("{" + ",".join(str(x) for x in sorted(s, key=canon_key)) + "}"
                         for s in ms)
        return "{" + body + "}"


def is_ultrafilter(U: CollectionOfSubsets) -> bool:
    """Nonempty, upward closed, closed under binary intersections, without
    the empty set, and prime for unions."""
    base = frozenset(U.base_carrier)
    members = U.members
    if not members:
        return False
    if frozenset() in members:
        return False
    subsets = [frozenset(s) for s in _all_subsets(base)]
    for R in members:
        for S in subsets:
            if R <= S and S not in members:
                return False
    for R in members:
        for S in members:
            if (R & S) not in members:
                return False
    for R in subsets:
        for S in subsets:
            if (R | S) in members and R not in members and S not in members:
                return False
    return True


def galvin_horn_check(U: CollectionOfSubsets) -> bool:
    """Every finite disjoint decomposition of the base carrier has exactly
    one member in U.  Decompositions may carry an empty member, which is what
    rules collections containing the empty set out."""
    base = list(U.base_carrier)
    empty_hit = frozenset() in U.members
    for partition in _set_partitions(base):
        hits = sum(1 for block in partition if frozenset(block) in U.members)
        if hits != 1 or (empty_hit and hits + 1 != 1):
            return False
    return True


def _all_subsets(base):
    base = sorted(base, key=canon_key)
    for r in range(len(base) + 1):
        yield from (frozenset(c) for c in itertools.combinations(base, r))


def _set_partitions(items: list):
    """All partitions into nonempty blocks; the empty carrier has exactly one
    partition, the empty one."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield part + [[first]]


# ---------------------------------------------------------------------------
# per-category predicates (collection views)

def is_prime_upset_collection(X, plugin, U: CollectionOfSubsets) -> bool:
    """Poset predicate: a nonempty collection of up-sets, upward closed among
    up-sets, closed under binary intersections, not containing the empty set,
    and prime: R ∪ S inside forces R or S inside."""
    upsets = [frozenset(s) for s in _upsets(X, plugin)]
    members = U.members
    if not members:
        return False
    if frozenset() in members:
        return False
    for R in members:
        for S in upsets:
            if R <= S and S not in members:
                return False
        for S in members:
            if (R & S) not in members:
                return False
    for R in upsets:
        for S in upsets:
            if (R | S) in members and R not in members and S not in members:
                return False
    return True


def _upsets(X: FinObject, plugin):
    leq = plugin.leq_set(X)
    for mask in itertools.product((0, 1), repeat=X.size):
        s = {X.elements[i] for i in range(X.size) if mask[i]}
        if all(b in s for a in s for (a2, b) in leq if a2 == a):
            yield s


def is_prime_open_filter(X, plugin, U: CollectionOfSubsets) -> bool:
    """T0-space predicate: a nonempty, intersection-closed collection of open
    sets, upward closed among opens, without the empty set, and prime."""
    opens = [frozenset(o) for o in plugin.open_sets(X)]
    members = U.members
    if not members:
        return False
    if frozenset() in members:
        return False
    for R in members:
        if R not in opens:
            return False
        for S in opens:
            if R <= S and S not in members:
                return False
        for S in members:
            if (R & S) not in members:
                return False
    for R in opens:
        for S in opens:
            if (R | S) in members and R not in members and S not in members:
                return False
    return True


def characterize_element(plugin, X: FinObject, view: CollectionOfSubsets | None,
                         in_xss: bool = True) -> tuple[bool, str]:
    """The per-category closed-form verdict for one double-dual element.

    jsl and vec admit every element; par admits the basepoint (the empty
    collection) next to the honest ultrafilters.
    """
    name = plugin.name
    if name in ("jsl", "vec"):
        return True, "every double-dual element qualifies"
    if name == "par":
        if not view.members:
            return True, "the basepoint (empty collection)"
        ok = is_ultrafilter(view)
        return ok, "ultrafilter" if ok else "not an ultrafilter"
    if name in ("set", "gra", "sigma_str", "mset", "top"):
        ok = is_ultrafilter(view)
        return ok, "ultrafilter" if ok else "not an ultrafilter"
    if name == "pos":
        ok = is_prime_upset_collection(X, plugin, view)
        return ok, ("prime intersection-closed up-set collection" if ok
                    else "fails the prime up-set collection conditions")
    if name == "top0":
        ok = is_prime_open_filter(X, plugin, view)
        return ok, "prime open filter" if ok else "not a prime open filter"
    return False, f"no characterization for {name}"


def graph_edge_predicate(plugin, X: FinObject, F: CollectionOfSubsets,
                         G: CollectionOfSubsets) -> bool:
    """Two vertex ultrafilters form an edge when every pair of members meets
    an edge of X."""
    edges = plugin.edge_set(X)
    for R in F.members:
        for S in G.members:
            if not any((x, y) in edges for x in R for y in S):
                return False
    return True


def sigma_relation_predicate(plugin, X: FinObject, views: tuple, symbol_index: int) -> bool:
    """n ultrafilters stand in the lifted relation when every product of
    members meets the relation of X."""
    rel = plugin.rel_set(X, symbol_index)
    for choice in itertools.product(*(v.members for v in views)):
        if not any(t in rel for t in itertools.product(*choice)):
            return False
    return True


def mset_action_predicate(plugin, X: FinObject, U: CollectionOfSubsets, m) -> CollectionOfSubsets:
    """m·U = {R | mR in U} with mR = {x | mx in R}."""
    base = U.base_carrier
    members = []
    for R in _all_subsets(frozenset(base)):
        mR = frozenset(x for x in base if plugin.act(X, m, x) in R)
        if mR in U.members:
            members.append(frozenset(R))
    return CollectionOfSubsets(base, frozenset(members))


def kvec_homogeneous_predicate(plugin, dualX: FinObject, h: tuple) -> bool:
    """h: X* -> K preserves scalar multiplication."""
    ix = dualX.index()
    for i, a in enumerate(dualX.elements):
        for lam in range(plugin.q):
            if h[ix[plugin._scale(lam, a)]] != plugin._scale(lam, h[i]):
                return False
    return True


def smonad_collection_view(plugin, X: FinObject, homs: tuple, u: tuple) -> CollectionOfSubsets:
    """Render an S-monad element as the collection of subsets named by the
    cogenerator homs it activates."""
    ix = X.index()
    base = tuple(X.elements)
    if plugin.name == "par":
        base = tuple(x for x in X.elements if x != plugin.basepoint(X))
    members = []
    for f, val in zip(homs, u):
        if _d_positive(plugin, val):
            members.append(frozenset(x for x in base if _d_positive(plugin, f[ix[x]])))
    return CollectionOfSubsets(base, frozenset(members))


def _d_positive(plugin, value) -> bool:
    if plugin.name == "mset":
        return plugin.m_identity in value
    return value == 1


def psi_largest_element_description(plugin, inst, budget=None) -> bool:
    """pos/jsl cone description: psi_a sends a collection to the largest
    element of the codomain whose up-set pulls back into the collection.

    For posets that element always exists (the collections are nonempty and
    prime).  For semilattices the empty collection occurs and names the
    bottom, so the largest element is taken as the join of the qualifying
    ones, the empty join being the bottom.
    """
    from .dualization import dual

    X = inst.base
    Xs = dual(plugin, X, budget)
    for k, (ai, a) in enumerate(inst.coslice.entries):
        A = inst.subcat[ai]
        if plugin.name == "pos":
            leqA = plugin.leq_set(A)
        else:
            leqA = frozenset((x, y) for x in A.elements for y in A.elements
                             if plugin.leq(A, x, y))
        ix = X.index()
        for i, u in enumerate(inst.carrier):
            view = plugin.collection_view(X, Xs, u)
            good = []
            for t in A.elements:
                # a^{-1}(up-set of t)
                pre = frozenset(x for x in X.elements if (t, a[ix[x]]) in leqA)
                if pre in view.members:
                    good.append(t)
            if plugin.name == "pos":
                maxes = [t for t in good if all((s, t) in leqA for s in good)]
                if len(maxes) != 1 or maxes[0] != inst.psi[k][i]:
                    return False
            else:
                acc = plugin.apply_op(A, "bot", ())
                for t in good:
                    acc = plugin.apply_op(A, "join", (acc, t))
                if acc != inst.psi[k][i]:
                    return False
    return True
