"""Cartesian-closed relational plugins: posets, undirected graphs, and
relational structures over a finite signature.

Graphs and Σ-structures are closed with hom-objects on *all* vertex
functions; the structure-preserving maps are exactly the loops of the
hom-object.  Complete relations are stored as a marker so double duals of
medium carriers stay cheap.
"""
from __future__ import annotations

import itertools

from ..kernel import (Element, FinObject, InvalidObjectError, canon_key,
                      guard_budget)
from .base import (CategoryPlugin, all_binary_relations_up_to_iso,
                   canonical_relational, upper_triangular_posets)


class PosPlugin(CategoryPlugin):
    name = "pos"

    def obj_from_leq(self, elements, leq_pairs) -> FinObject:
        data = (tuple(sorted(set(leq_pairs) | {(a, a) for a in elements},
                             key=lambda p: (canon_key(p[0]), canon_key(p[1])))),)
        o = FinObject(self.name, self.params(), tuple(elements), data)
        self.validate(o)
        return o

    def leq_set(self, obj) -> frozenset:
        c = obj.cache()
        if "leq" not in c:
            c["leq"] = frozenset(obj.data[0])
        return c["leq"]

    def leq(self, obj, a, b) -> bool:
        return (a, b) in self.leq_set(obj)

    def validate(self, obj):
        from .base import check_preorder
        check_preorder(obj.elements, obj.data[0], antisymmetric=True)

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
        leq_targets = [(tab, self.leq_set(tgt), tgt.index()) for tab, tgt in legs]
        pairs = []
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if all((tab[i], tab[j]) in rel for tab, rel, _ in leq_targets):
                    pairs.append((a, b))
        return self.obj_from_leq(elements, pairs)

    def relabel(self, obj, mapping):
        return self.obj_from_leq(tuple(mapping[e] for e in obj.elements),
                                 [(mapping[a], mapping[b]) for (a, b) in obj.data[0]])

    def internal_hom(self, A, B, budget=None):
        tables = self.hom_tables(A, B, budget)
        elements = tuple(tables)
        ixA = range(A.size)
        leqB = self.leq_set(B)
        pairs = []
        for f in elements:
            for g in elements:
                if all((f[i], g[i]) in leqB for i in ixA):
                    pairs.append((f, g))
        return self.obj_from_leq(elements, pairs)

    def cogenerator(self):
        return self.obj_from_leq((0, 1), [(0, 1)])

    def unit_object(self):
        return self.obj_from_leq(("*",), [])

    def unit_generator(self):
        return "*"

    def _enumerate_skeleton(self, n, budget=None):
        out = []
        for k in range(n + 1):
            for strict in upper_triangular_posets(k):
                out.append(self.obj_from_leq(tuple(range(k)), strict))
        return out

    def skeleton_rep(self, obj):
        strict = frozenset((obj.pos(a), obj.pos(b)) for (a, b) in obj.data[0] if a != b)
        form, perm = canonical_relational(obj.elements, {"lt": strict})
        rep = self.obj_from_leq(tuple(range(obj.size)), form[0][1])
        return rep, {obj.elements[i]: perm[i] for i in range(obj.size)}

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, v in zip(X.elements, g) if v == 1))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        return {"elements": list(obj.elements),
                "leq": [[a, b] for (a, b) in obj.data[0] if a != b]}

    def object_from_json(self, payload):
        elements = tuple(payload["elements"])
        return self.obj_from_leq(elements, [tuple(p) for p in payload.get("leq", [])])


class GraPlugin(CategoryPlugin):
    """Undirected graphs: a symmetric edge relation, loops allowed."""

    name = "gra"

    def obj_from_edges(self, vertices, edges) -> FinObject:
        vertices = tuple(vertices)
        closure = set()
        for (a, b) in edges:
            closure.add((a, b))
            closure.add((b, a))
        if len(closure) == len(vertices) ** 2 and vertices:
            data = ("complete",)
        else:
            data = ("edges", tuple(sorted(closure, key=lambda p: (canon_key(p[0]), canon_key(p[1])))))
        o = FinObject(self.name, self.params(), vertices, data)
        self.validate(o)
        return o

    def is_complete(self, obj) -> bool:
        return obj.data[0] == "complete"

    def edge_set(self, obj) -> frozenset:
        c = obj.cache()
        if "edges" not in c:
            if self.is_complete(obj):
                c["edges"] = frozenset((a, b) for a in obj.elements for b in obj.elements)
            else:
                c["edges"] = frozenset(obj.data[1])
        return c["edges"]

    def has_edge(self, obj, a, b) -> bool:
        if self.is_complete(obj):
            return True
        return (a, b) in self.edge_set(obj)

    def edge_pairs(self, obj):
        """Edges as stored pairs (both directions), complete ones expanded."""
        if self.is_complete(obj):
            return tuple((a, b) for a in obj.elements for b in obj.elements)
        return obj.data[1]

    def validate(self, obj):
        if self.is_complete(obj):
            return
        have = set(obj.elements)
        rel = set(obj.data[1])
        for (a, b) in rel:
            if a not in have or b not in have:
                raise InvalidObjectError("edge mentions unknown vertices")
            if (b, a) not in rel:
                raise InvalidObjectError("edge relation must be symmetric")

    def is_morphism(self, table, A, B):
        if self.is_complete(B):
            return True
        table = tuple(table)
        ix = A.index()
        edgesB = self.edge_set(B)
        for (a, b) in self.edge_pairs(A):
            if (table[ix[a]], table[ix[b]]) not in edgesB:
                return False
        return True

    def _partial_checkers(self, A, B):
        checkers = [[] for _ in range(A.size)]
        if self.is_complete(B):
            return checkers
        ix = A.index()
        edgesB = self.edge_set(B)
        for (a, b) in self.edge_pairs(A):
            pa, pb = ix[a], ix[b]

            def chk(table, k, pa=pa, pb=pb, edgesB=edgesB):
                return (table[pa], table[pb]) in edgesB

            checkers[max(pa, pb)].append(chk)
        return checkers

    def hom_tables(self, A, B, budget=None):
        if not self.is_complete(B):
            return super().hom_tables(A, B, budget)
        if A.size == 0:
            return [()]
        if B.size == 0:
            return []
        guard_budget("hom enumeration", B.size ** A.size, budget)
        return list(itertools.product(B.elements, repeat=A.size))

    def initial_structure(self, elements, legs):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InvalidObjectError("legs are not jointly injective")
        if all(self.is_complete(tgt) for _, tgt in legs) and elements:
            return FinObject(self.name, self.params(), elements, ("complete",))
        edge_targets = [(tab, self.edge_set(tgt)) for tab, tgt in legs]
        edges = []
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if all((tab[i], tab[j]) in rel for tab, rel in edge_targets):
                    edges.append((a, b))
        return self.obj_from_edges(elements, edges)

    def relabel(self, obj, mapping):
        if self.is_complete(obj):
            return FinObject(self.name, self.params(), tuple(mapping[e] for e in obj.elements),
                             ("complete",))
        return self.obj_from_edges(tuple(mapping[e] for e in obj.elements),
                                   [(mapping[a], mapping[b]) for (a, b) in obj.data[1]])

    def internal_hom(self, A, B, budget=None):
        """All vertex functions; (f, g) is an edge when every A-edge lands on
        a B-edge componentwise.  Against a complete B the hom is complete."""
        if A.size == 0:
            return self.obj_from_edges(((),), [((), ())])
        guard_budget("internal hom", B.size ** A.size, budget)
        tables = list(itertools.product(B.elements, repeat=A.size))
        if self.is_complete(B):
            return FinObject(self.name, self.params(), tuple(tables), ("complete",))
        ix = A.index()
        a_edges = self.edge_pairs(A)
        edgesB = self.edge_set(B)
        edges = []
        for f in tables:
            for g in tables:
                if all((f[ix[a]], g[ix[b]]) in edgesB for (a, b) in a_edges):
                    edges.append((f, g))
        return self.obj_from_edges(tuple(tables), edges)

    def cogenerator(self):
        return self.obj_from_edges((0, 1), [(0, 0), (0, 1), (1, 1)])

    def unit_object(self):
        # the loopless vertex: maps out of it are exactly the vertices
        return self.obj_from_edges(("*",), [])

    def unit_generator(self):
        return "*"

    def _enumerate_skeleton(self, n, budget=None):
        out = []
        for k in range(n + 1):
            for rel in all_binary_relations_up_to_iso(k, symmetric=True):
                out.append(self.obj_from_edges(tuple(range(k)), rel))
        return out

    def skeleton_rep(self, obj):
        rel = frozenset((obj.pos(a), obj.pos(b)) for (a, b) in self.edge_pairs(obj))
        form, perm = canonical_relational(obj.elements, {"e": rel})
        rep = self.obj_from_edges(tuple(range(obj.size)), form[0][1])
        return rep, {obj.elements[i]: perm[i] for i in range(obj.size)}

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, v in zip(X.elements, g) if v == 1))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        edges = []
        seen = set()
        for (a, b) in self.edge_pairs(obj):
            if (b, a) in seen or (a, b) in seen:
                continue
            seen.add((a, b))
            edges.append([a, b])
        return {"vertices": list(obj.elements), "edges": edges}

    def object_from_json(self, payload):
        return self.obj_from_edges(tuple(payload["vertices"]),
                                   [tuple(e) for e in payload.get("edges", [])])


class SigmaStrPlugin(CategoryPlugin):
    """Relational structures over a finite signature of finitary symbols."""

    name = "sigma_str"

    MAX_SYMBOLS = 4
    MAX_ARITY = 3

    def __init__(self, signature: dict[str, int] | tuple = (("edge", 2),)):
        if isinstance(signature, dict):
            signature = tuple(sorted(signature.items()))
        self.signature = tuple((str(s), int(a)) for s, a in signature)
        if not self.signature or len(self.signature) > self.MAX_SYMBOLS:
            raise InvalidObjectError(f"signature supports 1..{self.MAX_SYMBOLS} symbols")
        if any(a < 1 or a > self.MAX_ARITY for _, a in self.signature):
            raise InvalidObjectError(f"arities must be within 1..{self.MAX_ARITY}")

    def params(self):
        return (("signature", self.signature),)

    def obj_from_relations(self, elements, relations: dict) -> FinObject:
        elements = tuple(elements)
        data = []
        for name, arity in self.signature:
            tuples = {tuple(t) for t in relations.get(name, ())}
            if elements and len(tuples) == len(elements) ** arity:
                data.append(("complete",))
            else:
                data.append(("tuples", tuple(sorted(tuples, key=canon_key))))
        o = FinObject(self.name, self.params(), elements, tuple(data))
        self.validate(o)
        return o

    def rel_tuples(self, obj, k: int):
        entry = obj.data[k]
        if entry[0] == "complete":
            arity = self.signature[k][1]
            return tuple(itertools.product(obj.elements, repeat=arity))
        return entry[1]

    def rel_set(self, obj, k: int) -> frozenset:
        c = obj.cache()
        key = ("rel", k)
        if key not in c:
            c[key] = frozenset(self.rel_tuples(obj, k))
        return c[key]

    def is_complete_rel(self, obj, k: int) -> bool:
        return obj.data[k][0] == "complete"

    def validate(self, obj):
        have = set(obj.elements)
        for k, (name, arity) in enumerate(self.signature):
            if self.is_complete_rel(obj, k):
                continue
            for t in obj.data[k][1]:
                if len(t) != arity or any(x not in have for x in t):
                    raise InvalidObjectError(f"bad tuple for symbol {name}")

    def is_morphism(self, table, A, B):
        table = tuple(table)
        ix = A.index()
        for k in range(len(self.signature)):
            if self.is_complete_rel(B, k):
                continue
            relB = self.rel_set(B, k)
            for t in self.rel_tuples(A, k):
                if tuple(table[ix[x]] for x in t) not in relB:
                    return False
        return True

    def _partial_checkers(self, A, B):
        checkers = [[] for _ in range(A.size)]
        ix = A.index()
        for k in range(len(self.signature)):
            if self.is_complete_rel(B, k):
                continue
            relB = self.rel_set(B, k)
            for t in self.rel_tuples(A, k):
                positions = tuple(ix[x] for x in t)

                def chk(table, _k, positions=positions, relB=relB):
                    return tuple(table[p] for p in positions) in relB

                checkers[max(positions)].append(chk)
        return checkers

    def hom_tables(self, A, B, budget=None):
        if not all(self.is_complete_rel(B, k) for k in range(len(self.signature))):
            return super().hom_tables(A, B, budget)
        if A.size == 0:
            return [()]
        if B.size == 0:
            return []
        guard_budget("hom enumeration", B.size ** A.size, budget)
        return list(itertools.product(B.elements, repeat=A.size))

    def initial_structure(self, elements, legs):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InvalidObjectError("legs are not jointly injective")
        pos_of = {e: i for i, e in enumerate(elements)}
        relations = {}
        for k, (name, arity) in enumerate(self.signature):
            targets = [(tab, self.rel_set(tgt, k), self.is_complete_rel(tgt, k))
                       for tab, tgt in legs]
            tuples = []
            for t in itertools.product(elements, repeat=arity):
                positions = tuple(pos_of[x] for x in t)
                if all(comp or tuple(tab[p] for p in positions) in rel
                       for tab, rel, comp in targets):
                    tuples.append(t)
            relations[name] = tuples
        return self.obj_from_relations(elements, relations)

    def relabel(self, obj, mapping):
        relations = {}
        for k, (name, arity) in enumerate(self.signature):
            relations[name] = [tuple(mapping[x] for x in t) for t in self.rel_tuples(obj, k)]
        return self.obj_from_relations(tuple(mapping[e] for e in obj.elements), relations)

    def internal_hom(self, A, B, budget=None):
        if A.size == 0:
            return self.obj_from_relations(((),), {name: [((),) * a] for name, a in self.signature})
        guard_budget("internal hom", B.size ** A.size, budget)
        tables = list(itertools.product(B.elements, repeat=A.size))
        if all(self.is_complete_rel(B, k) for k in range(len(self.signature))):
            data = tuple(("complete",) for _ in self.signature)
            return FinObject(self.name, self.params(), tuple(tables), data)
        ix = A.index()
        relations = {}
        for k, (name, arity) in enumerate(self.signature):
            relB = self.rel_set(B, k)
            a_tuples = self.rel_tuples(A, k)
            found = []
            for fs in itertools.product(tables, repeat=arity):
                if all(tuple(fs[i][ix[t[i]]] for i in range(arity)) in relB
                       for t in a_tuples):
                    found.append(fs)
            relations[name] = found
        return self.obj_from_relations(tuple(tables), relations)

    def cogenerator(self):
        return self.obj_from_relations(
            (0, 1), {name: list(itertools.product((0, 1), repeat=a))
                     for name, a in self.signature})

    def unit_object(self):
        return self.obj_from_relations(("*",), {})

    def unit_generator(self):
        return "*"

    def _enumerate_skeleton(self, n, budget=None):
        single_binary = len(self.signature) == 1 and self.signature[0][1] == 2
        out = []
        for k in range(n + 1):
            if single_binary:
                name = self.signature[0][0]
                for rel in all_binary_relations_up_to_iso(k, symmetric=False):
                    out.append(self.obj_from_relations(tuple(range(k)), {name: rel}))
                continue
            total = 1
            for _, arity in self.signature:
                total *= 2 ** (k ** arity)
            guard_budget("sigma_str skeleton", total, budget)
            seen = set()
            fresh = []
            spaces = [list(itertools.product(range(k), repeat=a)) for _, a in self.signature]
            for masks in itertools.product(*(range(1 << len(sp)) for sp in spaces)):
                relations = {}
                for (name, _), sp, mask in zip(self.signature, spaces, masks):
                    relations[name] = [sp[i] for i in range(len(sp)) if (mask >> i) & 1]
                form, _ = canonical_relational(
                    tuple(range(k)),
                    {name: frozenset(rel) for name, rel in relations.items()})
                if form in seen:
                    continue
                seen.add(form)
                fresh.append((form, self.obj_from_relations(tuple(range(k)), relations)))
            fresh.sort(key=lambda fo: fo[0])
            out.extend(o for _, o in fresh)
        return out

    def skeleton_rep(self, obj):
        rels = {name: frozenset(tuple(obj.pos(x) for x in t) for t in self.rel_tuples(obj, k))
                for k, (name, _) in enumerate(self.signature)}
        form, perm = canonical_relational(obj.elements, rels)
        relations = {name: rel for (name, rel) in form}
        rep = self.obj_from_relations(tuple(range(obj.size)), relations)
        return rep, {obj.elements[i]: perm[i] for i in range(obj.size)}

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, v in zip(X.elements, g) if v == 1))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        return {"elements": list(obj.elements),
                "relations": {name: [list(t) for t in self.rel_tuples(obj, k)]
                              for k, (name, _) in enumerate(self.signature)}}

    def object_from_json(self, payload):
        relations = {name: [tuple(t) for t in ts]
                     for name, ts in payload.get("relations", {}).items()}
        return self.obj_from_relations(tuple(payload["elements"]), relations)
