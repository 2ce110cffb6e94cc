"""Pretty renderings (collection views, cones), byte-stable JSON for objects
and monad instances, and DOT export for coslice diagrams."""
from __future__ import annotations

import json

from .characterize import smonad_collection_view
from .constructions import MonadInstance, coslice_index
from .dualization import dual
from .kernel import FinMorphism, FinObject, guard_budget


def encode(value):
    """Elements and structure payloads are ints, strings and nested tuples;
    tuples become JSON arrays (and nothing else is an array)."""
    if isinstance(value, tuple):
        return [encode(v) for v in value]
    return value


def decode(value):
    if isinstance(value, list):
        return tuple(decode(v) for v in value)
    return value


def object_to_json(obj: FinObject) -> dict:
    return {"category": obj.category, "params": encode(obj.params),
            "elements": encode(obj.elements), "data": encode(obj.data)}


def object_from_json(payload: dict) -> FinObject:
    return FinObject(payload["category"], decode(payload["params"]),
                     decode(payload["elements"]), decode(payload["data"]))


def element_view(plugin, inst: MonadInstance, u) -> str:
    """The collection rendering of one monad element, when the category has
    one; the raw table otherwise."""
    if inst.construction == "dual2":
        view = plugin.collection_view(inst.base, dual(plugin, inst.base), u)
        if view is not None:
            return str(view)
    if inst.construction == "smonad":
        homs = plugin.hom_tables(inst.base, plugin.cogenerator())
        if plugin.name != "vec":
            return str(smonad_collection_view(plugin, inst.base, homs, u))
    return repr(u)


def instance_to_json(inst: MonadInstance) -> dict:
    out = {
        "category": inst.plugin.name,
        "params": encode(inst.plugin.params()),
        "construction": inst.construction,
        "base": object_to_json(inst.base),
        "carrier_object": object_to_json(inst.carrier_object),
        "subcat": [object_to_json(A) for A in inst.subcat],
        "entries": encode(tuple(inst.coslice.entries)),
        "surjective_only": inst.coslice.surjective_only,
        "psi": encode(inst.psi),
        "unit": encode(inst.unit.table),
        "ambient": object_to_json(inst.ambient) if inst.ambient else None,
        "embedding": encode(inst.embedding.table) if inst.embedding else None,
        "mult": encode(inst.mult.table) if inst.mult else None,
        "mult_carrier": object_to_json(inst.mult.source) if inst.mult else None,
        "mult_status": inst.mult_status,
    }
    return out


def instance_from_json(payload: dict, plugin) -> MonadInstance:
    base = object_from_json(payload["base"])
    carrier = object_from_json(payload["carrier_object"])
    subcat = tuple(object_from_json(p) for p in payload["subcat"])
    from .constructions import CosliceIndex
    coslice = CosliceIndex(plugin, base, subcat, decode(payload["entries"]),
                           payload["surjective_only"])
    ambient = object_from_json(payload["ambient"]) if payload["ambient"] else None
    embedding = (FinMorphism(carrier, ambient, decode(payload["embedding"]))
                 if payload["embedding"] else None)
    inst = MonadInstance(plugin, base, payload["construction"], subcat, coslice,
                         carrier, ambient, embedding, decode(payload["psi"]),
                         FinMorphism(base, carrier, decode(payload["unit"])))
    if payload["mult"]:
        inner_carrier = object_from_json(payload["mult_carrier"])
        inst.mult = FinMorphism(inner_carrier, carrier, decode(payload["mult"]))
        inst.mult_status = payload["mult_status"]
    else:
        inst.mult_status = payload["mult_status"]
    return inst


def instances_equal(a: MonadInstance, b: MonadInstance) -> bool:
    return (a.construction == b.construction and a.base == b.base
            and a.carrier_object == b.carrier_object
            and a.coslice.entries == b.coslice.entries and a.psi == b.psi
            and a.unit == b.unit and a.ambient == b.ambient
            and a.embedding == b.embedding
            and (a.mult.table if a.mult else None) == (b.mult.table if b.mult else None))


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def coslice_to_dot(plugin, X: FinObject, subcat, *, surjective_only=False,
                   budget=None) -> str:
    """Coslice entries as nodes, connecting morphisms as edges, with stable
    node identifiers."""
    cos = coslice_index(plugin, X, subcat, surjective_only=surjective_only, budget=budget)
    lines = ["digraph coslice {"]
    for k, (ai, t) in enumerate(cos.entries):
        label = f"A{ai}(n={cos.subcat[ai].size}) via {t}"
        lines.append(f'  e{k} [label="{label}"];')
    seen = 0
    for (i, j, h) in cos.connecting(budget):
        if i != j:
            lines.append(f'  e{i} -> e{j} [label="{h}"];')
            seen += 1
            guard_budget("dot edges", seen, budget)
    lines.append("}")
    return "\n".join(lines) + "\n"


def cone_listing(plugin, inst: MonadInstance) -> str:
    lines = []
    for k, (ai, a) in enumerate(inst.coslice.entries):
        lines.append(f"psi[{k}] for a={a} into object #{ai} "
                     f"(n={inst.subcat[ai].size}): {inst.psi[k]}")
    return "\n".join(lines) + "\n"


def instance_text(plugin, inst: MonadInstance, show_cone: bool = False) -> str:
    lines = [f"category: {plugin.name}",
             f"construction: {inst.construction}",
             f"base object: {inst.base.elements}",
             f"TX carrier ({inst.carrier_object.size} elements):"]
    for i, u in enumerate(inst.carrier):
        lines.append(f"  [{i}] {element_view(plugin, inst, u)}")
    lines.append("unit:")
    for x in inst.base.elements:
        lines.append(f"  {x} -> [{inst.carrier_object.pos(inst.unit(x))}]")
    if inst.mult is not None:
        lines.append(f"mult: TTX ({inst.mult.source.size} elements) -> TX")
        lines.append("  " + " ".join(str(inst.carrier_object.pos(v)) for v in inst.mult.table))
    else:
        lines.append(f"mult: PARTIAL ({inst.mult_status})")
    if show_cone:
        lines.append("cone:")
        lines.append(cone_listing(plugin, inst).rstrip("\n"))
    return "\n".join(lines) + "\n"
