"""Commutative-variety plugins: sets, pointed sets (partial functions),
join-semilattices, vector spaces over prime fields, and M-sets for finite
commutative monoids.

Each category is presented by finitary operations; hom-objects are the hom
sets with pointwise operations, which is what makes these categories
monoidal closed.
"""
from __future__ import annotations

import itertools

from ..kernel import (Element, FinObject, InvalidObjectError, ClosureError,
                      canon_key, guard_budget)
from .base import CategoryPlugin, canonical_relational

BOT = "bot"  # reserved basepoint token for the partial-function encoding


class VarietyPlugin(CategoryPlugin):
    """Common machinery for categories of finite algebras."""

    def op_arities(self) -> list[tuple[str, int]]:
        raise NotImplementedError

    def apply_op(self, obj: FinObject, name: str, args: tuple) -> Element:
        raise NotImplementedError

    def _build(self, elements: tuple, op_values: dict) -> FinObject:
        """Assemble an object from explicit op tables; overridden where the
        structure is implicit (vec)."""
        raise NotImplementedError

    # -- generic variety behaviour ------------------------------------------
    def is_morphism(self, table, A: FinObject, B: FinObject) -> bool:
        table = tuple(table)
        ix = A.index()
        for name, arity in self.op_arities():
            for args in itertools.product(A.elements, repeat=arity):
                lhs = table[ix[self.apply_op(A, name, args)]]
                rhs = self.apply_op(B, name, tuple(table[ix[a]] for a in args))
                if lhs != rhs:
                    return False
        return True

    def _partial_checkers(self, A: FinObject, B: FinObject):
        checkers = [[] for _ in range(A.size)]
        ix = A.index()
        for name, arity in self.op_arities():
            for args in itertools.product(range(A.size), repeat=arity):
                rpos = ix[self.apply_op(A, name, tuple(A.elements[p] for p in args))]
                latest = max(args + (rpos,))
                plugin, positions = self, args

                def chk(table, k, positions=positions, rpos=rpos, name=name, B=B):
                    return table[rpos] == self.apply_op(B, name, tuple(table[p] for p in positions))

                checkers[latest].append(chk)
        return checkers

    def initial_structure(self, elements: tuple, legs) -> FinObject:
        elements = tuple(elements)
        if not legs:
            if len(elements) > 1:
                raise InvalidObjectError("structure on >1 elements needs at least one leg")
            ops = {name: {(): elements[0]} if arity == 0 else
                   {args: elements[0] for args in itertools.product(elements, repeat=arity)}
                   for name, arity in self.op_arities()}
            return self._build(elements, ops)
        key_of = {}
        for i, e in enumerate(elements):
            key_of[e] = tuple(tab[i] for tab, _ in legs)
        inverse = {}
        for e, k in key_of.items():
            if k in inverse:
                raise InvalidObjectError("legs are not jointly injective")
            inverse[k] = e
        ops = {}
        for name, arity in self.op_arities():
            table = {}
            for args in itertools.product(elements, repeat=arity):
                want = tuple(self.apply_op(tgt, name, tuple(key_of[a][j] for a in args))
                             for j, (tab, tgt) in enumerate(legs))
                hit = inverse.get(want)
                if hit is None:
                    raise ClosureError(
                        f"{self.name}: carrier not closed under {name} (intersections of "
                        f"supported subobjects are closed, so this signals a caller bug)")
                table[args] = hit
            ops[name] = table
        return self._build(elements, ops)

    def relabel(self, obj: FinObject, mapping: dict) -> FinObject:
        new_elements = tuple(mapping[e] for e in obj.elements)
        back = {v: k for k, v in mapping.items()}
        ops = {}
        for name, arity in self.op_arities():
            ops[name] = {args: mapping[self.apply_op(obj, name, tuple(back[a] for a in args))]
                         for args in itertools.product(new_elements, repeat=arity)}
        return self._build(new_elements, ops)

    def internal_hom(self, A: FinObject, B: FinObject, budget=None) -> FinObject:
        tables = self.hom_tables(A, B, budget)
        elements = tuple(tables)
        ix = {t: i for i, t in enumerate(elements)}
        ops = {}
        for name, arity in self.op_arities():
            table = {}
            for args in itertools.product(elements, repeat=arity):
                val = tuple(self.apply_op(B, name, tuple(t[i] for t in args))
                            for i in range(A.size))
                if val not in ix:
                    raise ClosureError(f"{self.name}: hom set not closed pointwise")
                table[args] = val
            ops[name] = table
        return self._build(elements, ops)


# ---------------------------------------------------------------------------

class SetPlugin(VarietyPlugin):
    name = "set"

    def op_arities(self):
        return []

    def apply_op(self, obj, name, args):
        raise KeyError(name)

    def _build(self, elements, op_values):
        return FinObject(self.name, self.params(), elements, ())

    def validate(self, obj):
        if obj.data != ():
            raise InvalidObjectError("sets carry no structure")

    def cogenerator(self):
        return self.obj((0, 1), ())

    def unit_object(self):
        return self.obj(("*",), ())

    def unit_generator(self):
        return "*"

    def hom_tables(self, A, B, budget=None):
        if A.size == 0:
            return [()]
        if B.size == 0:
            return []
        guard_budget("hom enumeration", B.size ** A.size, budget)
        return [t for t in itertools.product(B.elements, repeat=A.size)]

    def initial_structure(self, elements, legs):
        return FinObject(self.name, self.params(), tuple(elements), ())

    def relabel(self, obj, mapping):
        return FinObject(self.name, self.params(), tuple(mapping[e] for e in obj.elements), ())

    def _enumerate_skeleton(self, n, budget=None):
        return [self.obj(tuple(range(k)), ()) for k in range(n + 1)]

    def skeleton_rep(self, obj):
        rep = self.obj(tuple(range(obj.size)), ())
        return rep, {e: i for i, e in enumerate(obj.elements)}

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, b in zip(X.elements, g) if b == 1))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        return {"elements": list(obj.elements)}

    def object_from_json(self, payload):
        return self.obj(tuple(payload["elements"]), ())


class ParPlugin(VarietyPlugin):
    """Sets and partial functions, encoded as pointed sets with basepoint BOT.

    The basepoint is "undefined": a partial map X -> Y is the pointed map
    sending undefined points to BOT.  The JSON surface reads and writes
    partial tables; carriers here always contain BOT.
    """

    name = "par"

    def op_arities(self):
        return [("bot", 0)]

    def apply_op(self, obj, name, args):
        return obj.data[0]

    def _build(self, elements, op_values):
        return FinObject(self.name, self.params(), elements, (op_values["bot"][()],))

    def validate(self, obj):
        if len(obj.data) != 1 or obj.data[0] not in obj.elements:
            raise InvalidObjectError("pointed set needs its basepoint in the carrier")

    def basepoint(self, obj):
        return obj.data[0]

    def cogenerator(self):
        # a singleton in the partial-function view: {1} plus the basepoint
        return self.obj((BOT, 1), (BOT,))

    def unit_object(self):
        return self.obj((BOT, "*"), (BOT,))

    def unit_generator(self):
        return "*"

    def _enumerate_skeleton(self, n, budget=None):
        return [self.obj((BOT,) + tuple(range(k - 1)), (BOT,)) for k in range(1, n + 1)]

    def skeleton_rep(self, obj):
        rest = [e for e in obj.elements if e != self.basepoint(obj)]
        rep = self.obj((BOT,) + tuple(range(len(rest))), (BOT,))
        mapping = {self.basepoint(obj): BOT}
        mapping.update({e: i for i, e in enumerate(rest)})
        return rep, mapping

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        bot = self.basepoint(X)
        carrier = tuple(x for x in X.elements if x != bot)
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, v in zip(X.elements, g) if v == 1))
        return CollectionOfSubsets(carrier, frozenset(members))

    def object_to_json(self, obj):
        return {"elements": [e for e in obj.elements if e != self.basepoint(obj)]}

    def object_from_json(self, payload):
        elems = tuple(payload["elements"])
        if BOT in elems:
            raise InvalidObjectError(f"element name {BOT!r} is reserved")
        return self.obj((BOT,) + elems, (BOT,))


class JslPlugin(VarietyPlugin):
    """Join-semilattices with bottom; morphisms preserve joins and bottom."""

    name = "jsl"

    def op_arities(self):
        return [("join", 2), ("bot", 0)]

    def apply_op(self, obj, name, args):
        if name == "bot":
            return obj.data[1]
        rows = obj.data[0]
        ix = obj.index()
        return rows[ix[args[0]]][ix[args[1]]]

    def _build(self, elements, op_values):
        ix = {e: i for i, e in enumerate(elements)}
        rows = tuple(tuple(op_values["join"][(a, b)] for b in elements) for a in elements)
        return FinObject(self.name, self.params(), elements, (rows, op_values["bot"][()]))

    def validate(self, obj):
        if obj.size == 0:
            raise InvalidObjectError("a join-semilattice has at least its bottom")
        join = lambda a, b: self.apply_op(obj, "join", (a, b))
        bot = obj.data[1]
        for a in obj.elements:
            if join(bot, a) != a or join(a, a) != a:
                raise InvalidObjectError("join must be idempotent with neutral bottom")
            for b in obj.elements:
                if join(a, b) != join(b, a):
                    raise InvalidObjectError("join must be commutative")
                for c in obj.elements:
                    if join(join(a, b), c) != join(a, join(b, c)):
                        raise InvalidObjectError("join must be associative")

    def leq(self, obj, a, b) -> bool:
        return self.apply_op(obj, "join", (a, b)) == b

    def cogenerator(self):
        return self.two_chain()

    def two_chain(self):
        return self._build((0, 1), {"join": {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 1},
                                    "bot": {(): 0}})

    def unit_object(self):
        # free join-semilattice on one generator: bottom < generator
        return self.two_chain()

    def unit_generator(self):
        return 1

    def _enumerate_skeleton(self, n, budget=None):
        from .base import upper_triangular_posets
        out = []
        for k in range(1, n + 1):
            for strict in upper_triangular_posets(k):
                leq = set(strict) | {(i, i) for i in range(k)}
                obj = self._try_from_order(tuple(range(k)), leq)
                if obj is not None:
                    out.append(obj)
        return out

    def _try_from_order(self, elements, leq_pairs) -> FinObject | None:
        ups = {a: {b for b in elements if (a, b) in leq_pairs} for a in elements}
        bottom = None
        for a in elements:
            if all((a, b) in leq_pairs for b in elements):
                bottom = a
                break
        if bottom is None:
            return None
        join = {}
        for a in elements:
            for b in elements:
                uppers = ups[a] & ups[b]
                least = [u for u in uppers if all((u, v) in leq_pairs for v in uppers)]
                if not least:
                    return None
                join[(a, b)] = least[0]
        return self._build(elements, {"join": join, "bot": {(): bottom}})

    def skeleton_rep(self, obj):
        leq = frozenset((obj.pos(a), obj.pos(b)) for a in obj.elements for b in obj.elements
                        if self.leq(obj, a, b))
        (form, perm) = canonical_relational(obj.elements, {"leq": leq})
        rep_leq = set(form[0][1])
        rep = self._try_from_order(tuple(range(obj.size)), rep_leq)
        mapping = {obj.elements[i]: perm[i] for i in range(obj.size)}
        return rep, mapping

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        for g, val in zip(dual.elements, u_table):
            if val == 1:
                members.append(frozenset(x for x, v in zip(X.elements, g) if v == 1))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        leq = [[a, b] for a in obj.elements for b in obj.elements
               if a != b and self.leq(obj, a, b)]
        return {"elements": list(obj.elements), "leq": leq}

    def object_from_json(self, payload):
        elements = tuple(payload["elements"])
        leq = {(a, b) for a, b in (tuple(p) for p in payload.get("leq", []))}
        leq |= {(a, a) for a in elements}
        for (a, b) in leq:
            if a not in elements or b not in elements:
                raise InvalidObjectError(f"leq mentions unknown element in ({a}, {b})")
            if (b, a) in leq and a != b:
                raise InvalidObjectError("order must be antisymmetric")
        for (a, b) in leq:
            for (b2, c) in leq:
                if b2 == b and (a, c) not in leq:
                    raise InvalidObjectError("order must be transitive")
        obj = self._try_from_order(elements, leq)
        if obj is None:
            raise InvalidObjectError("order has no bottom or misses binary joins")
        return obj


class VecPlugin(VarietyPlugin):
    """Vector spaces over the prime field F_q.

    Elements are nested tuples with integer leaves mod q; every operation is
    componentwise, so subspaces, products and hom sets need no stored tables.
    """

    name = "vec"

    def __init__(self, q: int):
        if q < 2 or any(q % p == 0 for p in range(2, q)):
            raise InvalidObjectError("vec(q) supports prime q only")
        self.q = q

    def params(self):
        return (("q", self.q),)

    def op_arities(self):
        return [("add", 2), ("zero", 0)] + [(f"smul{lam}", 1) for lam in range(self.q)]

    def _scale(self, lam: int, x):
        if isinstance(x, int):
            return (lam * x) % self.q
        return tuple(self._scale(lam, c) for c in x)

    def _add(self, x, y):
        if isinstance(x, int):
            return (x + y) % self.q
        return tuple(self._add(a, b) for a, b in zip(x, y))

    def apply_op(self, obj, name, args):
        if name == "add":
            return self._add(args[0], args[1])
        if name == "zero":
            probe = obj.elements[0]
            return self._scale(0, probe)
        return self._scale(int(name[4:]), args[0])

    def _build(self, elements, op_values):
        return FinObject(self.name, self.params(), elements, (self.q,))

    def validate(self, obj):
        if obj.size == 0:
            raise InvalidObjectError("the zero space has one element, not zero")
        if obj.data != (self.q,):
            raise InvalidObjectError("vec object tagged with the wrong field")
        zero = self._scale(0, obj.elements[0])
        have = set(obj.elements)
        if zero not in have:
            raise InvalidObjectError("carrier must contain the zero vector")
        for x in obj.elements:
            for lam in range(self.q):
                if self._scale(lam, x) not in have:
                    raise InvalidObjectError("carrier not closed under scalars")
        if obj.size ** 2 <= 4096:
            for x in obj.elements:
                for y in obj.elements:
                    if self._add(x, y) not in have:
                        raise InvalidObjectError("carrier not closed under addition")
        else:
            # large carriers arise only as full products, where additive
            # closure holds by construction; spot-check a deterministic slice
            probe = obj.elements[:64]
            for x in probe:
                for y in probe:
                    if self._add(x, y) not in have:
                        raise InvalidObjectError("carrier not closed under addition")

    def initial_structure(self, elements, legs):
        elements = tuple(elements)
        if len(elements) != len(set(elements)):
            raise InvalidObjectError("legs are not jointly injective")
        obj = FinObject(self.name, self.params(), elements, (self.q,))
        self.validate(obj)
        return obj

    def relabel(self, obj, mapping):
        # vector-space structure is implicit in the element encoding, so a
        # relabeled carrier must itself be closed; callers only relabel along
        # linear bijections
        return self.initial_structure(tuple(mapping[e] for e in obj.elements), [])

    def space(self, dim: int) -> FinObject:
        elems = [tuple(v) for v in itertools.product(range(self.q), repeat=dim)]
        return FinObject(self.name, self.params(), tuple(elems), (self.q,))

    def dim(self, obj: FinObject) -> int:
        d = 0
        while self.q ** d < obj.size:
            d += 1
        if self.q ** d != obj.size:
            raise InvalidObjectError("carrier size is not a power of q")
        return d

    def basis_coords(self, A: FinObject):
        """A greedy basis plus the coordinates of every element over it."""
        zero = self._scale(0, A.elements[0])
        span = {zero: ()}
        basis: list = []
        for e in A.elements:
            if e in span:
                continue
            new_span = dict(span)
            for vec, coords in span.items():
                acc = vec
                for lam in range(1, self.q):
                    acc = self._add(acc, e)
                    new_span[acc] = coords + (lam,)
            fixed = {}
            for vec, coords in span.items():
                fixed[vec] = coords + (0,)
            for vec, coords in new_span.items():
                if vec not in span:
                    fixed[vec] = coords
            span = fixed
            basis.append(e)
        if len(span) != A.size:
            raise InvalidObjectError("carrier is not a subspace")
        return basis, span

    def hom_tables(self, A, B, budget=None):
        basis, coords = self.basis_coords(A)
        guard_budget("hom enumeration", B.size ** len(basis), budget)
        out = []
        belems = B.elements
        bzero = self._scale(0, belems[0])
        for images in itertools.product(belems, repeat=len(basis)):
            table = []
            for e in A.elements:
                acc = bzero
                for lam, img in zip(coords[e], images):
                    if lam:
                        acc = self._add(acc, self._scale(lam, img))
                table.append(acc)
            out.append(tuple(table))
        bix = B.index()
        out.sort(key=lambda t: tuple(bix[v] for v in t))
        return out

    def is_morphism(self, table, A, B):
        table = tuple(table)
        ix = A.index()
        for x in A.elements:
            for lam in range(self.q):
                if table[ix[self._scale(lam, x)]] != self._scale(lam, table[ix[x]]):
                    return False
        for x in A.elements:
            for y in A.elements:
                if table[ix[self._add(x, y)]] != self._add(table[ix[x]], table[ix[y]]):
                    return False
        return True

    def internal_hom(self, A, B, budget=None):
        tables = self.hom_tables(A, B, budget)
        return FinObject(self.name, self.params(), tuple(tables), (self.q,))

    def cogenerator(self):
        return self.space(1)

    def unit_object(self):
        return self.space(1)

    def unit_generator(self):
        return (1,)

    recommended_min_fp_bound = 1

    def _enumerate_skeleton(self, n, budget=None):
        return [self.space(d) for d in range(n + 1)]

    def skeleton_rep(self, obj):
        basis, coords = self.basis_coords(obj)
        rep = self.space(len(basis))
        return rep, {e: tuple(coords[e]) for e in obj.elements}

    def object_to_json(self, obj):
        return {"dim": self.dim(obj)}

    def object_from_json(self, payload):
        return self.space(int(payload["dim"]))


class MSetPlugin(VarietyPlugin):
    """Sets with an action of a finite commutative monoid M; morphisms are the
    equivariant maps."""

    name = "mset"

    def __init__(self, monoid_elements: tuple, table: tuple):
        self.m_elements = tuple(monoid_elements)
        self.m_table = tuple(tuple(row) for row in table)
        mix = {m: i for i, m in enumerate(self.m_elements)}
        self._mix = mix
        ident = None
        for e in self.m_elements:
            if all(self._mul(e, m) == m and self._mul(m, e) == m for m in self.m_elements):
                ident = e
                break
        if ident is None:
            raise InvalidObjectError("monoid needs an identity")
        self.m_identity = ident
        for a in self.m_elements:
            for b in self.m_elements:
                if self._mul(a, b) != self._mul(b, a):
                    raise InvalidObjectError("monoid must be commutative")
                for c in self.m_elements:
                    if self._mul(self._mul(a, b), c) != self._mul(a, self._mul(b, c)):
                        raise InvalidObjectError("monoid must be associative")

    def _mul(self, a, b):
        return self.m_table[self._mix[a]][self._mix[b]]

    def params(self):
        return (("monoid", self.m_elements, self.m_table),)

    def op_arities(self):
        return [(f"act_{i}", 1) for i in range(len(self.m_elements))]

    def act(self, obj, m, x):
        rows = obj.data[0]
        return rows[self._mix[m]][obj.pos(x)]

    def apply_op(self, obj, name, args):
        return self.act(obj, self.m_elements[int(name[4:])], args[0])

    def _build(self, elements, op_values):
        rows = tuple(tuple(op_values[f"act_{i}"][(x,)] for x in elements)
                     for i in range(len(self.m_elements)))
        return FinObject(self.name, self.params(), elements, (rows,))

    def validate(self, obj):
        for x in obj.elements:
            if self.act(obj, self.m_identity, x) != x:
                raise InvalidObjectError("identity must act trivially")
            for a in self.m_elements:
                for b in self.m_elements:
                    if self.act(obj, a, self.act(obj, b, x)) != self.act(obj, self._mul(a, b), x):
                        raise InvalidObjectError("action must respect multiplication")

    def from_action(self, elements, action: dict) -> FinObject:
        ops = {f"act_{i}": {(x,): action[(m, x)] for x in elements}
               for i, m in enumerate(self.m_elements)}
        obj = self._build(tuple(elements), ops)
        self.validate(obj)
        return obj

    def cogenerator(self):
        # the power set of M, acting by mR = {x in M | mx in R}
        subsets = [tuple(s) for s in _sorted_subsets(self.m_elements)]
        action = {}
        for m in self.m_elements:
            for R in subsets:
                action[(m, R)] = tuple(x for x in self.m_elements if self._mul(m, x) in R)
        return self.from_action(tuple(subsets), action)

    def unit_object(self):
        # M acting on itself, free on the identity
        action = {(m, x): self._mul(m, x) for m in self.m_elements for x in self.m_elements}
        return self.from_action(self.m_elements, action)

    def unit_generator(self):
        return self.m_identity

    def _enumerate_skeleton(self, n, budget=None):
        empty = self._build((), {f"act_{i}": {} for i in range(len(self.m_elements))})
        seen = set()
        result = [empty]
        for k in range(1, n + 1):
            guard_budget("mset skeleton", k ** (len(self.m_elements) * k), budget)
            elements = tuple(range(k))
            fresh = []
            for rows in itertools.product(itertools.product(elements, repeat=k),
                                          repeat=len(self.m_elements)):
                obj = FinObject(self.name, self.params(), elements, (rows,))
                try:
                    self.validate(obj)
                except InvalidObjectError:
                    continue
                form = self._canon_form(obj)
                if form not in seen:
                    seen.add(form)
                    fresh.append((form, obj))
            fresh.sort(key=lambda fo: fo[0])
            result.extend(obj for _, obj in fresh)
        return result

    def _canon_form(self, obj):
        rels = {f"act_{i}": frozenset((obj.pos(x), obj.pos(self.act(obj, m, x)))
                                      for x in obj.elements)
                for i, m in enumerate(self.m_elements)}
        form, _ = canonical_relational(obj.elements, rels)
        return form

    def skeleton_rep(self, obj):
        rels = {f"act_{i}": frozenset((obj.pos(x), obj.pos(self.act(obj, m, x)))
                                      for x in obj.elements)
                for i, m in enumerate(self.m_elements)}
        form, perm = canonical_relational(obj.elements, rels)
        elements = tuple(range(obj.size))
        action = {}
        for i, m in enumerate(self.m_elements):
            for (p, q) in form[i][1]:
                action[(m, p)] = q
        rep = self.from_action(elements, action)
        return rep, {obj.elements[i]: perm[i] for i in range(obj.size)}

    def collection_view(self, X, dual, u_table):
        from ..characterize import CollectionOfSubsets
        members = []
        one = self.m_identity
        for g, val in zip(dual.elements, u_table):
            # an equivariant g: X -> P(M) is the subset {x | identity in g(x)},
            # and u contains it when the identity lies in u(g)
            if one in val:
                members.append(frozenset(x for x, gx in zip(X.elements, g) if one in gx))
        return CollectionOfSubsets(X.elements, frozenset(members))

    def object_to_json(self, obj):
        return {
            "monoid": {"elements": list(self.m_elements),
                       "table": [list(r) for r in self.m_table]},
            "carrier": list(obj.elements),
            "action": {str(m): {str(x): self.act(obj, m, x) for x in obj.elements}
                       for m in self.m_elements},
        }

    def object_from_json(self, payload):
        elements = tuple(payload["carrier"])
        act = payload["action"]
        action = {(m, x): act[str(m)][str(x)] for m in self.m_elements for x in elements}
        return self.from_action(elements, action)


def _sorted_subsets(elements):
    out = []
    for r in range(len(elements) + 1):
        out.extend(itertools.combinations(elements, r))
    out.sort(key=lambda s: (len(s), canon_key(s)))
    return out
