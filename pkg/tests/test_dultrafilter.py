"""Derived subobjects, the intersection monad and its functoriality."""
import pytest

from codensity.characterize import is_ultrafilter
from codensity.dualization import double_dual, dual, unit_eta
from codensity.dultrafilter import (derived_subobject, list_d_ultrafilters,
                                    monad_by_intersection, t_on_morphism)
from codensity.kernel import FinMorphism, identity
from codensity.plugins import get_plugin


class TestDerivedSubobject:
    def test_identity_yields_the_unit_image(self, setp):
        X = setp.obj((0, 1), ())
        d = derived_subobject(setp, identity(X))
        eta = unit_eta(setp, X)
        assert set(d.sub.members) == {eta(0), eta(1)}
        assert len(d.sub.members) == 2
        assert double_dual(setp, X).size == 16

    def test_terminal_map_by_brute_force(self, setp):
        """The derived subobject of X -> 1 consists exactly of the collections
        containing the full set and not the empty set (oracle: check the
        pushforward of all 256 collections directly)."""
        X = setp.obj((0, 1, 2), ())
        T = setp.obj(("*",), ())
        a = FinMorphism(X, T, ("*", "*", "*"))
        d = derived_subobject(setp, a)
        Xs = dual(setp, X)
        empty = tuple(0 for _ in Xs.elements)
        expected = []
        for u in double_dual(setp, X).elements:
            view = setp.collection_view(X, Xs, u)
            if frozenset(X.elements) in view.members and frozenset() not in view.members:
                expected.append(u)
        assert list(d.sub.members) == expected
        assert len(expected) == 64

    def test_vec_derived_subobject_is_everything(self, vec2):
        V = vec2.space(2)
        K = vec2.space(1)
        for m in [FinMorphism(V, K, tuple(x[:1] for x in V.elements))]:
            d = derived_subobject(vec2, m)
            assert len(d.sub.members) == double_dual(vec2, V).size

    def test_pullback_square_commutes(self, setp):
        X = setp.obj((0, 1), ())
        A = setp.obj(("a",), ())
        a = FinMorphism(X, A, ("a", "a"))
        d = derived_subobject(setp, a)
        from codensity.dualization import double_dual_on_morphism
        ass = double_dual_on_morphism(setp, a)
        eta = unit_eta(setp, A)
        for u in d.sub.members:
            assert ass(u) == eta(d.p_map(u))


class TestIntersectionMonad:
    def test_set_two_gives_the_principal_ultrafilters(self, setp):
        X = setp.obj((0, 1), ())
        inst = monad_by_intersection(setp, X, 4)
        assert inst.carrier_object.size == 2
        assert inst.unit.is_injective() and inst.unit.is_surjective()

    def test_jsl_chain_monad_is_the_whole_double_dual(self, jslp):
        C = jslp.two_chain()
        inst = monad_by_intersection(jslp, C, 4)
        assert set(inst.carrier) == set(double_dual(jslp, C).elements)

    def test_gra_single_edge(self, grap):
        G = grap.obj_from_edges((0, 1), [(0, 1)])
        inst = monad_by_intersection(grap, G, 4)
        TX = inst.carrier_object
        assert TX.size == 2
        u, v = TX.elements
        assert grap.has_edge(TX, u, v)
        assert not grap.has_edge(TX, u, u) and not grap.has_edge(TX, v, v)

    def test_surjective_core_equals_full_range(self):
        for name in ("set", "pos", "gra", "jsl"):
            plugin = get_plugin(name)
            for X in plugin.fp_objects_up_to(2):
                core = monad_by_intersection(plugin, X, 3, build_mult=False)
                full = monad_by_intersection(plugin, X, 3, build_mult=False,
                                             full_range=True)
                assert core.carrier_object == full.carrier_object

    def test_low_bound_warns(self, setp):
        X = setp.obj((0, 1), ())
        with pytest.warns(UserWarning):
            monad_by_intersection(setp, X, 2, build_mult=False)

    def test_cone_factors_through_the_intersection(self, setp):
        X = setp.obj((0, 1), ())
        inst = monad_by_intersection(setp, X, 3, build_mult=False)
        for k, (ai, a) in enumerate(inst.coslice.entries):
            A = inst.subcat[ai]
            eta_a = unit_eta(setp, A)
            for i, u in enumerate(inst.carrier):
                from codensity.dualization import double_dual_on_morphism
                ass = double_dual_on_morphism(setp, FinMorphism(X, A, a))
                assert ass(u) == eta_a(inst.psi[k][i])


class TestTOnMorphism:
    def test_identity(self, setp):
        X = setp.obj((0, 1), ())
        inst = monad_by_intersection(setp, X, 4, build_mult=False)
        tf = t_on_morphism(setp, inst, inst, identity(X))
        assert tf == identity(inst.carrier_object)

    def test_collapse_sends_principal_to_principal(self, setp):
        X = setp.obj((0, 1, 2), ())
        Y = setp.obj((0, 1), ())
        f = FinMorphism(X, Y, (0, 0, 1))
        ix = monad_by_intersection(setp, X, 4, build_mult=False)
        iy = monad_by_intersection(setp, Y, 4, build_mult=False)
        tf = t_on_morphism(setp, ix, iy, f)
        eta_x = ix.unit
        eta_y = iy.unit
        for x in X.elements:
            assert tf(eta_x(x)) == eta_y(f(x))

    def test_vec_tf_is_the_whole_double_dual_map(self, vec2):
        V, W = vec2.space(1), vec2.space(2)
        f = FinMorphism(V, W, tuple((x[0], 0) for x in V.elements))
        iv = monad_by_intersection(vec2, V, 2, build_mult=False)
        iw = monad_by_intersection(vec2, W, 2, build_mult=False)
        from codensity.dualization import double_dual_on_morphism
        tf = t_on_morphism(vec2, iv, iw, f)
        fss = double_dual_on_morphism(vec2, f)
        assert tf.table == tuple(fss(u) for u in iv.carrier)


class TestListing:
    def test_set_three_lists_principal_ultrafilters(self, setp):
        X = setp.obj((0, 1, 2), ())
        out = list_d_ultrafilters(setp, X, 4)
        assert len(out) == 3
        for _, view in out:
            assert is_ultrafilter(view)
            assert any(len(m) == 1 for m in view.members)

    def test_pos_chain_two(self, posp):
        C = posp.obj_from_leq((0, 1), [(0, 1)])
        assert len(list_d_ultrafilters(posp, C, 4)) == 2

    def test_vec_dim_two_lists_the_double_dual(self, vec2):
        V = vec2.space(2)
        assert len(list_d_ultrafilters(vec2, V, 2)) == 4
