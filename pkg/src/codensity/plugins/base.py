"""Shared plugin machinery: the per-category interface, generic constraint
search for hom enumeration, and isomorphism-class canonization."""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

import numpy as np

from ..kernel import (BudgetExceededError, Element, FinObject, FinMorphism,
                      InvalidObjectError, canon_key, default_budget,
                      guard_budget)

_SKELETON_CACHE: dict = {}
_HOM_CACHE: dict = {}


class CategoryPlugin:
    """Per-category semantics: objecthood, morphismhood, D, I, internal homs.

    Subclasses fill in the structure hooks; the kernel and everything above it
    only ever talks to this interface.
    """

    name = "?"
    recommended_min_fp_bound = 4

    def params(self) -> tuple:
        return ()

    def key(self) -> tuple:
        return (self.name, self.params())

    def __eq__(self, other):
        return isinstance(other, CategoryPlugin) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<plugin {self.name}{self.params() or ''}>"

    # -- objects -----------------------------------------------------------
    def obj(self, elements: Sequence[Element], data: tuple) -> FinObject:
        o = FinObject(self.name, self.params(), elements, data)
        self.validate(o)
        return o

    def validate(self, obj: FinObject) -> None:
        raise NotImplementedError

    def cogenerator(self) -> FinObject:
        raise NotImplementedError

    def unit_object(self) -> FinObject:
        raise NotImplementedError

    def unit_generator(self) -> Element:
        raise NotImplementedError

    # -- morphisms ----------------------------------------------------------
    def is_morphism(self, table: Sequence[Element], A: FinObject, B: FinObject) -> bool:
        raise NotImplementedError

    def hom_tables(self, A: FinObject, B: FinObject, budget: int | None = None) -> list[tuple]:
        """All valid tables in lexicographic order over target positions.

        The default is a backtracking search over the full function space with
        the plugin's incremental pruning hook; subclasses may override with a
        closed-form enumeration (they must keep the order canonical).
        """
        key = (self.key(), A, B)
        hit = _HOM_CACHE.get(key)
        if hit is not None:
            return hit
        if A.size == 0:
            out = [()]
            _HOM_CACHE[key] = out
            return out
        if B.size == 0:
            _HOM_CACHE[key] = []
            return []
        worst = B.size ** A.size
        checkers = self._partial_checkers(A, B)
        if worst > (default_budget() if budget is None else budget):
            # with no pruning the whole function space is the candidate count;
            # with pruning, large sources cannot be brought down far enough
            if A.size > 24 or not any(checkers):
                guard_budget("hom enumeration", worst, budget)
        out: list[tuple] = []
        table: list = [None] * A.size
        elems = B.elements
        steps = 0

        def dfs(k: int):
            nonlocal steps
            if k == A.size:
                out.append(tuple(table))
                return
            for v in elems:
                steps += 1
                guard_budget("hom enumeration", steps, budget)
                table[k] = v
                if all(chk(table, k) for chk in checkers[k]):
                    dfs(k + 1)
            table[k] = None

        dfs(0)
        _HOM_CACHE[key] = out
        return out

    def _partial_checkers(self, A: FinObject, B: FinObject) -> list[list]:
        """checkers[k] = predicates valid once positions 0..k are assigned."""
        return [[] for _ in range(A.size)]

    # -- structure hooks ----------------------------------------------------
    def initial_structure(self, elements: tuple, legs: list[tuple[tuple, FinObject]]) -> FinObject:
        """The coarsest structure on `elements` making every leg a morphism.

        legs are (table, target) pairs with table aligned to `elements`.
        This realizes pointwise structure on limits, pullback structure, and
        meets of subobject structures, uniformly.
        """
        raise NotImplementedError

    def substructure(self, ambient: FinObject, members: tuple) -> FinObject:
        """Full induced substructure (subalgebra for varieties); raises
        ClosureError when the member set is not closed."""
        return self.initial_structure(members, [(members, ambient)])

    def is_closed_subset(self, ambient: FinObject, members: Iterable[Element]) -> bool:
        try:
            self.substructure(ambient, tuple(m for m in ambient.elements if m in set(members)))
            return True
        except InvalidObjectError:
            return False

    def relabel(self, obj: FinObject, mapping: dict) -> FinObject:
        """Transport the structure along a bijective relabeling of the carrier."""
        raise NotImplementedError

    # -- internal homs -------------------------------------------------------
    def internal_hom(self, A: FinObject, B: FinObject, budget: int | None = None) -> FinObject:
        raise NotImplementedError(f"{self.name} is not monoidal closed")

    # -- skeleton -------------------------------------------------------------
    def fp_objects_up_to(self, n: int, budget: int | None = None) -> list[FinObject]:
        """One representative per iso class with carrier size <= n, sorted by
        (size, canonical form)."""
        key = (self.key(), n)
        hit = _SKELETON_CACHE.get(key)
        if hit is None:
            hit = self._enumerate_skeleton(n, budget)
            _SKELETON_CACHE[key] = hit
        return hit

    def _enumerate_skeleton(self, n: int, budget: int | None) -> list[FinObject]:
        raise NotImplementedError

    def skeleton_rep(self, obj: FinObject) -> tuple[FinObject, dict]:
        """Canonical representative of obj's iso class and an iso onto it."""
        raise NotImplementedError

    # -- rendering / serialization --------------------------------------------
    def render_element(self, X: FinObject, x: Element) -> str:
        return repr(x)

    def collection_view(self, X: FinObject, dual: FinObject, u_table: tuple):
        """Render an element of [[X,D],D] as a collection of subsets, for the
        plugins where the set-of-sets view exists.  Returns None otherwise."""
        return None

    def object_to_json(self, obj: FinObject) -> dict:
        raise NotImplementedError

    def object_from_json(self, payload: dict) -> FinObject:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# canonization helpers

def cogenerator_check(plugin, n: int, candidate: "FinObject | None" = None,
                      budget: int | None = None):
    """Morphisms into D separate every distinct parallel pair between objects
    up to size n.  Returns (True, None) or (False, counterexample)."""
    D = candidate if candidate is not None else plugin.cogenerator()
    objs = plugin.fp_objects_up_to(n, budget)
    for A in objs:
        for B in objs:
            homs = plugin.hom_tables(A, B, budget)
            seps = plugin.hom_tables(B, D, budget)
            bix = B.index()
            for i, f in enumerate(homs):
                for g in homs[i + 1:]:
                    if not any(tuple(d[bix[v]] for v in f) != tuple(d[bix[v]] for v in g)
                               for d in seps):
                        return False, (A, B, f, g)
    return True, None


def unit_object_check(plugin, n: int, budget: int | None = None):
    """Hom(I, -) is in canonical bijection with the carrier up to size n."""
    from ..kernel import global_elements, InvalidObjectError
    for X in plugin.fp_objects_up_to(n, budget):
        try:
            global_elements(plugin, X, budget)
        except InvalidObjectError:
            return False, X
    return True, None


def check_preorder(elements: tuple, pairs, *, antisymmetric: bool) -> None:
    """Reflexivity, transitivity and optional antisymmetry via bitmask rows
    (tolerable on product-sized relations)."""
    ix = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    up = [0] * n
    for (a, b) in pairs:
        ia, ib = ix.get(a), ix.get(b)
        if ia is None or ib is None:
            raise InvalidObjectError("relation mentions unknown elements")
        up[ia] |= 1 << ib
    for i in range(n):
        if not (up[i] >> i) & 1:
            raise InvalidObjectError("relation must be reflexive")
    for i in range(n):
        row = up[i]
        j_mask = row
        while j_mask:
            j = (j_mask & -j_mask).bit_length() - 1
            j_mask &= j_mask - 1
            if up[j] & ~row:
                raise InvalidObjectError("relation must be transitive")
            if antisymmetric and i != j and (up[j] >> i) & 1:
                raise InvalidObjectError("relation must be antisymmetric")


def canonical_relational(elements: tuple, relations: dict[str, frozenset]) -> tuple:
    """Canonical form of (carrier, named tuple-relations) under relabeling.

    Elements are identified with positions; the form is the minimum over all
    permutations of the sorted relation tuples.  Exhaustive search: desk-scale
    carriers only.
    """
    n = len(elements)
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(
            (name, tuple(sorted(tuple(perm[i] for i in tup) for tup in rel)))
            for name, rel in sorted(relations.items())
        )
        if best is None or form < best[0]:
            best = (form, perm)
    return best


def canonical_relational_numpy(n: int, pair_relation: frozenset) -> tuple:
    """Fast canonical form for one binary relation on range(n) (n <= 5)."""
    perms = list(itertools.permutations(range(n)))
    slots = [(i, j) for i in range(n) for j in range(n)]
    slot_ix = {p: k for k, p in enumerate(slots)}
    bits = np.zeros(len(slots), dtype=np.uint8)
    for (i, j) in pair_relation:
        bits[slot_ix[(i, j)]] = 1
    best = None
    for perm in perms:
        moved = np.zeros_like(bits)
        for k, (i, j) in enumerate(slots):
            moved[slot_ix[(perm[i], perm[j])]] = bits[k]
        val = tuple(moved.tolist())
        if best is None or val < best[0]:
            best = (val, perm)
    return best


def all_binary_relations_up_to_iso(n: int, symmetric: bool) -> list[frozenset]:
    """All binary relations (symmetric: with both directions stored) on
    range(n) up to iso, canonical minimum form, deterministic order.

    Vectorized over the whole labeled family; exhaustive permutations.
    """
    if n == 0:
        return [frozenset()]
    if symmetric:
        slots = [(i, j) for i in range(n) for j in range(i, n)]
    else:
        slots = [(i, j) for i in range(n) for j in range(n)]
    m = len(slots)
    slot_ix = {}
    for k, (i, j) in enumerate(slots):
        slot_ix[(i, j)] = k
        if symmetric:
            slot_ix[(j, i)] = k
    count = 1 << m
    # bit k of each value says slot k is present
    values = np.arange(count, dtype=np.int64)
    bits = ((values[:, None] >> np.arange(m)) & 1).astype(np.int64)
    best = values.copy()
    for perm in itertools.permutations(range(n)):
        moved_slot = np.array([slot_ix[(perm[i], perm[j])] for (i, j) in slots], dtype=np.int64)
        permuted = np.zeros(count, dtype=np.int64)
        for k in range(m):
            permuted |= bits[:, k] << moved_slot[k]
        best = np.minimum(best, permuted)
    canon = np.unique(best[best == values])
    out = []
    for v in canon.tolist():
        rel = set()
        for k, (i, j) in enumerate(slots):
            if (v >> k) & 1:
                rel.add((i, j))
                if symmetric:
                    rel.add((j, i))
        out.append(frozenset(rel))
    out.sort(key=lambda r: tuple(sorted(r)))
    return out


def upper_triangular_posets(n: int) -> list[frozenset]:
    """All partial orders on range(n) up to iso, as strict-order pair sets.

    Every poset has a linear extension, so searching transitively closed
    upper-triangular relations reaches every iso class cheaply.
    """
    if n == 0:
        return [frozenset()]
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = {}
    for mask in range(1 << len(slots)):
        rel = {slots[k] for k in range(len(slots)) if (mask >> k) & 1}
        ok = True
        for (i, j) in rel:
            for (j2, k) in rel:
                if j2 == j and (i, k) not in rel:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        form, _ = canonical_relational(tuple(range(n)), {"lt": frozenset(rel)})
        if form not in seen:
            seen[form] = frozenset(rel)
    return [seen[k] for k in sorted(seen)]
