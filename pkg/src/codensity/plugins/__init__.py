"""Plugin registry: one CategoryPlugin per supported category."""
from __future__ import annotations

from ..kernel import InvalidObjectError
from .base import CategoryPlugin
from .relational import GraPlugin, PosPlugin, SigmaStrPlugin
from .topological import Top0Plugin, TopPlugin
from .varieties import BOT, JslPlugin, MSetPlugin, ParPlugin, SetPlugin, VecPlugin

_CACHE: dict = {}

CLOSED_CATEGORIES = ("set", "par", "pos", "jsl", "gra", "sigma_str", "vec", "mset")
ALL_CATEGORIES = CLOSED_CATEGORIES + ("top", "top0")


def z2_monoid() -> tuple:
    return (("e", "g"), (("e", "g"), ("g", "e")))


def get_plugin(category: str, *, q: int | None = None, monoid: tuple | None = None,
               signature=None) -> CategoryPlugin:
    if category == "vec":
        key = ("vec", q)
        if key not in _CACHE:
            if q is None:
                raise InvalidObjectError("vec needs a field size q")
            _CACHE[key] = VecPlugin(q)
        return _CACHE[key]
    if category == "mset":
        if monoid is None:
            monoid = z2_monoid()
        elements, table = monoid
        key = ("mset", tuple(elements), tuple(tuple(r) for r in table))
        if key not in _CACHE:
            _CACHE[key] = MSetPlugin(tuple(elements), tuple(tuple(r) for r in table))
        return _CACHE[key]
    if category == "sigma_str":
        if signature is None:
            signature = (("edge", 2),)
        plugin = SigmaStrPlugin(signature)
        key = ("sigma_str", plugin.signature)
        if key not in _CACHE:
            _CACHE[key] = plugin
        return _CACHE[key]
    simple = {"set": SetPlugin, "par": ParPlugin, "pos": PosPlugin, "jsl": JslPlugin,
              "gra": GraPlugin, "top": TopPlugin, "top0": Top0Plugin}
    if category not in simple:
        raise InvalidObjectError(f"unknown category {category!r}")
    if category not in _CACHE:
        _CACHE[category] = simple[category]()
    return _CACHE[category]
