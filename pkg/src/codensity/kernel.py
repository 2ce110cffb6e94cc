"""Category-agnostic finite machinery.

Objects are finite carriers with category-specific structure, morphisms are
explicit element tables.  Everything is immutable and deterministic:
enumerations come out in lexicographic order over element tables, computed
objects list their elements in first-discovered order, and re-running any
operation reproduces the identical result.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Sequence

Element = Any  # int | str | nested tuple thereof

DEFAULT_BUDGET = 10**7
_budget_cache: list = []


def default_budget() -> int:
    """The configured enumeration budget; CODENSITY_BUDGET overrides, read
    once per process."""
    if not _budget_cache:
        env = os.environ.get("CODENSITY_BUDGET")
        _budget_cache.append(int(env) if env else DEFAULT_BUDGET)
    return _budget_cache[0]


class CodensityError(Exception):
    pass


class InvalidObjectError(CodensityError):
    pass


class InvalidMorphismError(CodensityError):
    pass


class ClosureError(CodensityError):
    """A carrier that must be structure-closed is not (signals a caller bug)."""


class SubfunctorError(CodensityError):
    """A morphism failed to restrict to the computed submonad carriers."""


class BudgetExceededError(CodensityError):
    def __init__(self, what: str, amount: int, budget: int):
        shown = str(amount) if amount.bit_length() <= 64 else f"~2^{amount.bit_length() - 1}"
        super().__init__(f"budget exceeded in {what}: {shown} > {budget}")
        self.what = what
        self.amount = amount
        self.budget = budget


def guard_budget(what: str, amount: int, budget: int | None) -> None:
    limit = default_budget() if budget is None else budget
    if amount > limit:
        raise BudgetExceededError(what, amount, limit)


def canon_key(x: Element):
    """Total order key over the element algebra (ints < strings < tuples)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    return (2, tuple(canon_key(y) for y in x))


class FinObject:
    """A finite carrier plus an opaque structure payload owned by a plugin.

    `elements` fixes the canonical total order of the carrier; `data` is a
    hashable, canonical encoding of the category-specific structure.
    """

    __slots__ = ("category", "params", "elements", "data", "_hash", "_index", "_cache")

    def __init__(self, category: str, params: tuple, elements: Sequence[Element], data: tuple):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise InvalidObjectError("carrier elements must be pairwise distinct")
        object.__setattr__(self, "category", category)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "_hash", hash((category, params, elements, data)))
        object.__setattr__(self, "_index", None)
        object.__setattr__(self, "_cache", None)

    def __setattr__(self, name, value):
        raise AttributeError("FinObject is immutable")

    @property
    def size(self) -> int:
        return len(self.elements)

    def index(self) -> dict:
        ix = self._index
        if ix is None:
            ix = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_index", ix)
        return ix

    def cache(self) -> dict:
        """Per-object scratch for derived views (edge sets, order sets, ...)."""
        c = self._cache
        if c is None:
            c = {}
            object.__setattr__(self, "_cache", c)
        return c

    def pos(self, element: Element) -> int:
        return self.index()[element]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinObject):
            return NotImplemented
        return (self._hash == other._hash and self.category == other.category
                and self.params == other.params and self.elements == other.elements
                and self.data == other.data)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinObject({self.category}, n={self.size})"


class FinMorphism:
    """A structure-preserving map stored as an explicit element table.

    `table[i]` is the image of `source.elements[i]`.  Partiality in the
    partial-function category is encoded by the plugin's basepoint, so tables
    are always total here.
    """

    __slots__ = ("source", "target", "table", "_hash", "_ixtable")

    def __init__(self, source: FinObject, target: FinObject, table: Sequence[Element]):
        table = tuple(table)
        if len(table) != source.size:
            raise InvalidMorphismError("table must be defined exactly on the source carrier")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_hash", hash((source, target, table)))
        object.__setattr__(self, "_ixtable", None)

    def __setattr__(self, name, value):
        raise AttributeError("FinMorphism is immutable")

    def __call__(self, x: Element) -> Element:
        return self.table[self.source.pos(x)]

    def index_table(self) -> tuple:
        """Table as target positions, the canonical sort key for morphisms."""
        t = self._ixtable
        if t is None:
            tix = self.target.index()
            t = tuple(tix[v] for v in self.table)
            object.__setattr__(self, "_ixtable", t)
        return t

    def is_injective(self) -> bool:
        return len(set(self.table)) == len(self.table)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.target.size

    def __eq__(self, other):
        if not isinstance(other, FinMorphism):
            return NotImplemented
        return (self._hash == other._hash and self.source == other.source
                and self.target == other.target and self.table == other.table)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"FinMorphism({self.source!r} -> {self.target!r})"


def identity(obj: FinObject) -> FinMorphism:
    return FinMorphism(obj, obj, obj.elements)


def compose(g: FinMorphism, f: FinMorphism) -> FinMorphism:
    """g after f."""
    if f.target != g.source:
        raise InvalidMorphismError("composition mismatch")
    gt = g.table
    mid = g.source.index()
    return FinMorphism(f.source, g.target, tuple(gt[mid[v]] for v in f.table))


def compose_tables(h_table: tuple, h_source: FinObject, a_table: tuple) -> tuple:
    """Table of h∘a given h's table over h_source and a's table into h_source."""
    ix = h_source.index()
    return tuple(h_table[ix[v]] for v in a_table)


@dataclass(frozen=True)
class FinDiagram:
    nodes: tuple  # tuple[FinObject]
    arrows: tuple  # tuple[(source_index, target_index, FinMorphism)]

    def __post_init__(self):
        for i, j, h in self.arrows:
            if h.source != self.nodes[i] or h.target != self.nodes[j]:
                raise InvalidObjectError("arrow endpoints must match the indexed objects")


@dataclass(frozen=True)
class Cone:
    apex: FinObject
    legs: tuple  # tuple[FinMorphism], indexed like the diagram nodes

    def check(self, diagram: FinDiagram) -> bool:
        for leg, node in zip(self.legs, diagram.nodes):
            if leg.source != self.apex or leg.target != node:
                return False
        for i, j, h in diagram.arrows:
            if compose(h, self.legs[i]) != self.legs[j]:
                return False
        return True


@dataclass(frozen=True)
class Subobject:
    """A structure-closed subset of an ambient carrier with its inclusion.

    `structure` carries the subset's own structure, which for subobjects
    arising from pullbacks may be strictly coarser than the full induced one.
    """
    ambient: FinObject
    members: tuple
    structure: FinObject
    inclusion: FinMorphism

    def __post_init__(self):
        if self.structure.elements != self.members:
            raise InvalidObjectError("subobject structure must live on its member set")
        if self.inclusion.source != self.structure or self.inclusion.target != self.ambient:
            raise InvalidObjectError("inclusion endpoints are wrong")
        if not self.inclusion.is_injective():
            raise InvalidObjectError("inclusion must be injective")


# ---------------------------------------------------------------------------
# hom enumeration

def enumerate_hom(plugin, A: FinObject, B: FinObject, budget: int | None = None) -> list[FinMorphism]:
    """All structure-preserving maps A -> B in lexicographic table order."""
    tables = plugin.hom_tables(A, B, budget)
    morphisms = [FinMorphism(A, B, t) for t in tables]
    morphisms.sort(key=lambda m: m.index_table())
    return morphisms


# ---------------------------------------------------------------------------
# limits of explicit finite diagrams

def _compatible_families(diagram: FinDiagram, budget: int | None) -> list[tuple]:
    nodes = diagram.nodes
    limit = default_budget() if budget is None else budget
    prod = 1
    for n in nodes:
        prod *= n.size
    # constraints grouped by the later endpoint so backtracking can check early
    by_latest: dict[int, list] = {k: [] for k in range(len(nodes))}
    for i, j, h in diagram.arrows:
        by_latest[max(i, j)].append((i, j, h.table, nodes[i].index()))
    if prod <= min(limit, 200_000):
        # definitional route: materialize the product, filter by every arrow
        families = []
        for fam in itertools.product(*(n.elements for n in nodes)):
            ok = True
            for i, j, h in diagram.arrows:
                if h.table[nodes[i].pos(fam[i])] != fam[j]:
                    ok = False
                    break
            if ok:
                families.append(fam)
        return families
    # early-pruning backtracking, identical output order
    families: list[tuple] = []
    assign: list = [None] * len(nodes)
    steps = 0

    def dfs(k: int):
        nonlocal steps
        if k == len(nodes):
            families.append(tuple(assign))
            guard_budget("limit family count", len(families), budget)
            return
        for v in nodes[k].elements:
            steps += 1
            guard_budget("limit search", steps, budget)
            assign[k] = v
            ok = True
            for i, j, table, ix in by_latest[k]:
                if assign[i] is None or assign[j] is None:
                    continue
                if table[ix[assign[i]]] != assign[j]:
                    ok = False
                    break
            if ok:
                dfs(k + 1)
        assign[k] = None

    dfs(0)
    return families


def limit(plugin, diagram: FinDiagram, budget: int | None = None) -> tuple[FinObject, Cone]:
    """Limit apex = compatible families, structure pointwise, legs = projections."""
    families = _compatible_families(diagram, budget)
    nodes = diagram.nodes
    legs_spec = [(tuple(fam[i] for fam in families), nodes[i]) for i in range(len(nodes))]
    apex = plugin.initial_structure(tuple(families), legs_spec)
    legs = tuple(FinMorphism(apex, nodes[i], legs_spec[i][0]) for i in range(len(nodes)))
    return apex, Cone(apex, legs)


def check_limit_universal(plugin, diagram: FinDiagram, apex: FinObject, cone: Cone,
                          probes: Iterable[FinObject], budget: int | None = None):
    """Exhaustive universal-property check: every cone from a probe factors
    through the apex by exactly one morphism.  Returns None or a counterexample."""
    for Z in probes:
        node_homs = [enumerate_hom(plugin, Z, n, budget) for n in diagram.nodes]
        apex_homs = enumerate_hom(plugin, Z, apex, budget)
        for legs in itertools.product(*node_homs):
            ok = all(compose(h, legs[i]) == legs[j] for i, j, h in diagram.arrows)
            if not ok:
                continue
            factorings = [m for m in apex_homs
                          if all(compose(cone.legs[i], m) == legs[i] for i in range(len(diagram.nodes)))]
            if len(factorings) != 1:
                return (Z, legs, factorings)
    return None


# ---------------------------------------------------------------------------
# pullbacks

@dataclass(frozen=True)
class PullbackResult:
    object: FinObject
    p1: FinMorphism
    p2: FinMorphism
    subobject: Subobject | None  # the preimage presentation when g is monic


def pullback(plugin, f: FinMorphism, g: FinMorphism, budget: int | None = None) -> PullbackResult:
    if f.target != g.target:
        raise InvalidMorphismError("pullback legs must share their target")
    A, B = f.source, g.source
    guard_budget("pullback pairs", A.size * B.size, budget)
    pairs = [(x, y) for x in A.elements for y in B.elements if f(x) == g(y)]
    legs_spec = [(tuple(p[0] for p in pairs), A), (tuple(p[1] for p in pairs), B)]
    P = plugin.initial_structure(tuple(pairs), legs_spec)
    p1 = FinMorphism(P, A, legs_spec[0][0])
    p2 = FinMorphism(P, B, legs_spec[1][0])
    sub = None
    if g.is_injective():
        members = tuple(x for x in A.elements if any(p[0] == x for p in pairs))
        mapping = {pair: pair[0] for pair in pairs}
        structure = plugin.relabel(P, mapping)
        inclusion = FinMorphism(structure, A, members)
        sub = Subobject(A, members, structure, inclusion)
    return PullbackResult(P, p1, p2, sub)


# ---------------------------------------------------------------------------
# subobject intersection

def subobject_from_members(plugin, ambient: FinObject, members: Iterable[Element]) -> Subobject:
    """The full induced subobject on a structure-closed member set."""
    members = tuple(x for x in ambient.elements if x in set(members))
    structure = plugin.substructure(ambient, members)
    return Subobject(ambient, members, structure, FinMorphism(structure, ambient, members))


def intersect_subobjects(plugin, subs: Sequence[Subobject]) -> Subobject:
    """Member sets intersect; the structure is the initial one for the
    evident maps into every input (the meet of the pulled-back structures)."""
    if not subs:
        raise InvalidObjectError("intersection needs at least one subobject")
    ambient = subs[0].ambient
    for s in subs:
        if s.ambient != ambient:
            raise InvalidObjectError("all ambients must coincide")
    if len(subs) == 1:
        return subs[0]
    common = set(subs[0].members)
    for s in subs[1:]:
        common &= set(s.members)
    members = tuple(x for x in ambient.elements if x in common)
    legs_spec = [(members, ambient)]
    legs_spec += [(members, s.structure) for s in subs]
    structure = plugin.initial_structure(members, legs_spec)
    return Subobject(ambient, members, structure, FinMorphism(structure, ambient, members))


def factorization_through(sub: Subobject, bigger: Subobject) -> FinMorphism:
    """The inclusion of one subobject through a larger one (diagram-chase q)."""
    if not set(sub.members) <= set(bigger.members):
        raise InvalidObjectError("no factorization: member sets not nested")
    return FinMorphism(sub.structure, bigger.structure, sub.members)


# ---------------------------------------------------------------------------
# global elements

def global_elements(plugin, X: FinObject, budget: int | None = None) -> list[FinMorphism]:
    """Hom(I, X) ordered by the carrier identification x <-> (generator |-> x)."""
    I = plugin.unit_object()
    homs = enumerate_hom(plugin, I, X, budget)
    gen = plugin.unit_generator()
    by_value = {}
    for h in homs:
        v = h(gen)
        if v in by_value:
            raise InvalidObjectError("unit object fails to represent the carrier")
        by_value[v] = h
    if set(by_value) != set(X.elements):
        raise InvalidObjectError("unit object fails to represent the carrier")
    return [by_value[x] for x in X.elements]
