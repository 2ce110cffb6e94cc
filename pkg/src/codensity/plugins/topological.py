"""Finite topological spaces and finite T0 spaces.

A finite space is determined by its specialization preorder (x below y when
every open set containing x contains y); opens are exactly the up-sets and
continuity is exactly monotonicity.  Objects therefore store the preorder,
which keeps products componentwise, while open families are derived on
demand for rendering, JSON and the filter predicates (product spaces can
carry astronomically many opens, so the family is never the stored form).

These categories are not monoidal closed here; only the cogenerator homs are
needed, so duals and internal homs are unavailable and the monad is reached
through the product monad over the cogenerator and through the limit formula.
"""
from __future__ import annotations

import itertools

from ..kernel import FinObject, InvalidObjectError, canon_key, guard_budget
from .base import CategoryPlugin, canonical_relational


def _canon_open(s) -> tuple:
    return tuple(sorted(s, key=canon_key))


class TopPlugin(CategoryPlugin):
    name = "top"
    t0 = False

    # -- construction ---------------------------------------------------------
    def obj_from_preorder(self, points, pairs) -> FinObject:
        points = tuple(points)
        ix = {x: i for i, x in enumerate(points)}
        rel = set(pairs) | {(x, x) for x in points}
        for (a, b) in rel:
            if a not in ix or b not in ix:
                raise InvalidObjectError("preorder mentions unknown points")
        data = (tuple(sorted(rel, key=lambda p: (ix[p[0]], ix[p[1]]))),)
        o = FinObject(self.name, self.params(), points, data)
        self.validate(o)
        return o

    def obj_from_opens(self, points, opens) -> FinObject:
        points = tuple(points)
        fam = {frozenset(o) for o in opens}
        fam.add(frozenset())
        fam.add(frozenset(points))
        have = set(points)
        for u in fam:
            if not u <= have:
                raise InvalidObjectError("open mentions unknown points")
            for v in fam:
                if (u | v) not in fam or (u & v) not in fam:
                    raise InvalidObjectError(
                        "topology must be closed under union and intersection")
        pairs = [(x, y) for x in points for y in points
                 if all(y in u for u in fam if x in u)]
        obj = self.obj_from_preorder(points, pairs)
        if self.open_sets(obj) != frozenset(fam):
            raise InvalidObjectError("open family is not the up-sets of its "
                                     "specialization preorder (not a finite topology)")
        return obj

    def leq_set(self, obj) -> frozenset:
        c = obj.cache()
        if "leq" not in c:
            c["leq"] = frozenset(obj.data[0])
        return c["leq"]

    def validate(self, obj):
        from .base import check_preorder
        try:
            check_preorder(obj.elements, obj.data[0], antisymmetric=self.t0)
        except InvalidObjectError as exc:
            if self.t0 and "antisymmetric" in str(exc):
                raise InvalidObjectError(
                    "T0 points must have distinct open neighbourhoods") from exc
            raise

    # -- opens on demand -------------------------------------------------------
    def opens(self, obj, budget=None) -> tuple:
        c = obj.cache()
        if "opens" not in c:
            guard_budget("open family", 2 ** obj.size, budget)
            rel = self.leq_set(obj)
            out = []
            for mask in itertools.product((0, 1), repeat=obj.size):
                s = {obj.elements[i] for i in range(obj.size) if mask[i]}
                if all(y in s for x in s for (x2, y) in rel if x2 == x):
                    out.append(_canon_open(s))
            out.sort(key=canon_key)
            c["opens"] = tuple(out)
        return c["opens"]

    def open_sets(self, obj, budget=None) -> frozenset:
        return frozenset(frozenset(o) for o in self.opens(obj, budget))

    # -- morphisms ---------------------------------------------------------------
    def is_morphism(self, table, A, B):
        table = tuple(table)
        ix = A.index()
        leqB = self.leq_set(B)
        for (a, b) in A.data[0]:
            if (table[ix[a]], table[ix[b]]) not in leqB:
                return False
        return True

    def _partial_checkers(self, A, B):
        checkers = [[] for _ in range(A.size)]
        ix = A.index()
        leqB = self.leq_set(B)
        for (a, b) in A.data[0]:
            pa, pb = ix[a], ix[b]
            if pa == pb:
                continue

            def chk(table, k, pa=pa, pb=pb, leqB=leqB):
                return (table[pa], table[pb]) in leqB

            checkers[max(pa, pb)].append(chk)
        return checkers

    def initial_structure(self, elements, legs):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InvalidObjectError("legs are not jointly injective")
        targets = [(tab, self.leq_set(tgt)) for tab, tgt in legs]
        pairs = []
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if all((tab[i], tab[j]) in rel for tab, rel in targets):
                    pairs.append((a, b))
        # in the T0 case antisymmetry is automatic: the targets are T0 and the
        # legs are jointly injective; validate() rejects anything else
        return self.obj_from_preorder(elements, pairs)

    def relabel(self, obj, mapping):
        return self.obj_from_preorder(tuple(mapping[e] for e in obj.elements),
                                      [(mapping[a], mapping[b]) for (a, b) in obj.data[0]])

    # -- distinguished objects ---------------------------------------------------
    def cogenerator(self):
        # two indiscrete points
        return self.obj_from_preorder((0, 1), [(0, 1), (1, 0)])

    def unit_object(self):
        return self.obj_from_preorder(("*",), [])

    def unit_generator(self):
        return "*"

    # -- skeleton -----------------------------------------------------------------
    def _preorder_forms(self, k: int):
        """Canonical labeled preorders (posets in the T0 case) on range(k)."""
        pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
        seen = {}
        for mask in range(1 << len(pairs)):
            rel = {pairs[t] for t in range(len(pairs)) if (mask >> t) & 1}
            if self.t0 and any((b, a) in rel for (a, b) in rel):
                continue
            rel |= {(i, i) for i in range(k)}
            ok = all((a, c) in rel
                     for (a, b) in rel for (b2, c) in rel if b2 == b)
            if not ok:
                continue
            form, _ = canonical_relational(tuple(range(k)), {"leq": frozenset(rel)})
            if form not in seen:
                seen[form] = frozenset(form[0][1])
        return [seen[key] for key in sorted(seen)]

    def _enumerate_skeleton(self, n, budget=None):
        out = []
        for k in range(n + 1):
            guard_budget("top skeleton", 1 << max(k * k - k, 0), budget)
            for rel in self._preorder_forms(k):
                out.append(self.obj_from_preorder(tuple(range(k)), rel))
        return out

    def skeleton_rep(self, obj):
        rel = frozenset((obj.pos(a), obj.pos(b)) for (a, b) in obj.data[0])
        form, perm = canonical_relational(obj.elements, {"leq": rel})
        rep = self.obj_from_preorder(tuple(range(obj.size)), form[0][1])
        return rep, {obj.elements[i]: perm[i] for i in range(obj.size)}

    # -- serialization ---------------------------------------------------------------
    def object_to_json(self, obj):
        return {"points": list(obj.elements),
                "opens": [list(o) for o in self.opens(obj)]}

    def object_from_json(self, payload):
        return self.obj_from_opens(tuple(payload["points"]),
                                   [tuple(o) for o in payload.get("opens", [])])


class Top0Plugin(TopPlugin):
    name = "top0"
    t0 = True

    def cogenerator(self):
        # the Sierpinski space: {1} open, {0} not
        return self.obj_from_preorder((0, 1), [(0, 1)])
