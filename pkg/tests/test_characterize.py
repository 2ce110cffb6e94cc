"""The closed-form oracles: ultrafilter predicates, the partition test, and
the per-category element characterizations."""
import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from codensity import characterize as ch
from codensity.dualization import double_dual, dual
from codensity.dultrafilter import monad_by_intersection
from codensity.kernel import FinMorphism
from codensity.plugins import get_plugin


def collection(base, members):
    return ch.CollectionOfSubsets(tuple(base), frozenset(frozenset(m) for m in members))


def principal(base, x):
    return collection(base, [m for m in _subsets(base) if x in m])


def _subsets(base):
    base = list(base)
    out = []
    for r in range(len(base) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(base, r))
    return out


class TestUltrafilter:
    def test_principal_is_an_ultrafilter(self):
        assert ch.is_ultrafilter(principal((0, 1, 2), 1))

    def test_large_sets_collection_is_not_prime(self):
        U = collection((0, 1, 2), [m for m in _subsets((0, 1, 2)) if len(m) >= 2])
        assert not ch.is_ultrafilter(U)

    def test_empty_collection_is_rejected(self):
        assert not ch.is_ultrafilter(collection((0, 1), []))

    def test_principal_partition_selects_one_block(self):
        assert ch.galvin_horn_check(principal((0, 1, 2), 0))

    def test_large_sets_collection_fails_the_singleton_partition(self):
        U = collection((0, 1, 2), [m for m in _subsets((0, 1, 2)) if len(m) >= 2])
        assert not ch.galvin_horn_check(U)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_partition_test_equals_ultrafilter_test_exhaustively(self, n):
        base = tuple(range(n))
        subsets = _subsets(base)
        for mask in itertools.product((0, 1), repeat=len(subsets)):
            U = collection(base, [s for s, b in zip(subsets, mask) if b])
            assert ch.galvin_horn_check(U) == ch.is_ultrafilter(U)

    def test_ultrafilters_on_a_finite_set_are_principal(self):
        base = (0, 1, 2)
        subsets = _subsets(base)
        found = []
        for mask in itertools.product((0, 1), repeat=len(subsets)):
            U = collection(base, [s for s, b in zip(subsets, mask) if b])
            if ch.is_ultrafilter(U):
                found.append(U)
        assert len(found) == 3


class TestCharacterizeElement:
    def test_pos_principal_upset_collection(self, posp):
        C = posp.obj_from_leq((0, 1), [(0, 1)])
        U = collection(C.elements, [{1}, {0, 1}])
        ok, why = ch.characterize_element(posp, C, U)
        assert ok, why

    def test_pos_collection_with_empty_member_rejected(self, posp):
        C = posp.obj_from_leq((0, 1), [(0, 1)])
        U = collection(C.elements, [set(), {1}, {0, 1}])
        ok, _ = ch.characterize_element(posp, C, U)
        assert not ok

    def test_jsl_always_qualifies(self, jslp):
        C = jslp.two_chain()
        ok, why = ch.characterize_element(jslp, C, None)
        assert ok

    def test_set_non_prime_collection_rejected_and_absent(self, setp):
        X = setp.obj((0, 1), ())
        U = collection(X.elements, [{0, 1}])
        ok, _ = ch.characterize_element(setp, X, U)
        assert not ok
        inst = monad_by_intersection(setp, X, 4, build_mult=False)
        Xs = dual(setp, X)
        for u in inst.carrier:
            assert setp.collection_view(X, Xs, u).members != U.members

    def test_par_basepoint_is_the_empty_collection(self, parp):
        P = parp.object_from_json({"elements": ["a"]})
        ok, why = ch.characterize_element(parp, P, collection(("a",), []))
        assert ok and "basepoint" in why


class TestGraphEdgePredicate:
    def test_single_edge(self, grap):
        G = grap.obj_from_edges((0, 1), [(0, 1)])
        f0, f1 = principal((0, 1), 0), principal((0, 1), 1)
        assert ch.graph_edge_predicate(grap, G, f0, f1)
        assert not ch.graph_edge_predicate(grap, G, f0, f0)

    def test_looped_vertex(self, grap):
        L = grap.obj_from_edges(("v",), [("v", "v")])
        f = principal(("v",), "v")
        assert ch.graph_edge_predicate(grap, L, f, f)

    def test_complete_graph_with_loops(self, grap):
        K = grap.obj_from_edges((0, 1), [(0, 0), (0, 1), (1, 1)])
        fs = [principal((0, 1), 0), principal((0, 1), 1)]
        for a in fs:
            for b in fs:
                assert ch.graph_edge_predicate(grap, K, a, b)


class TestMsetActionPredicate:
    def test_identity_leaves_collections_alone(self, msetp):
        X = msetp.from_action((0, 1), {("e", 0): 0, ("e", 1): 1,
                                       ("g", 0): 1, ("g", 1): 0})
        U = principal((0, 1), 0)
        assert ch.mset_action_predicate(msetp, X, U, "e").members == U.members

    def test_swap_moves_the_principal_point(self, msetp):
        X = msetp.from_action((0, 1), {("e", 0): 0, ("e", 1): 1,
                                       ("g", 0): 1, ("g", 1): 0})
        U = principal((0, 1), 0)
        moved = ch.mset_action_predicate(msetp, X, U, "g")
        assert moved.members == principal((0, 1), 1).members
        assert ch.is_ultrafilter(moved)

    def test_action_associativity_on_all_small_instances(self, msetp):
        for X in msetp.fp_objects_up_to(3):
            if X.size == 0:
                continue
            for x in X.elements:
                U = principal(X.elements, x)
                for m in ("e", "g"):
                    for n in ("e", "g"):
                        one = ch.mset_action_predicate(
                            msetp, X, ch.mset_action_predicate(msetp, X, U, n), m)
                        two = ch.mset_action_predicate(msetp, X, U, msetp._mul(m, n))
                        assert one.members == two.members


class TestHomogeneous:
    def test_linear_functionals_are_homogeneous(self, vec2):
        V = vec2.space(2)
        Vs = dual(vec2, V)
        Vss = double_dual(vec2, V)
        for h in Vss.elements:
            assert ch.kvec_homogeneous_predicate(vec2, Vs, h)

    def test_q2_dim2_counts(self, vec2):
        V = vec2.space(2)
        Vs = dual(vec2, V)
        homog = [h for h in itertools.product(((0,), (1,)), repeat=Vs.size)
                 if ch.kvec_homogeneous_predicate(vec2, Vs, h)]
        assert len(homog) == 8
        assert double_dual(vec2, V).size == 4

    def test_q3_dim1_homogeneous_maps_are_linear(self, vec3):
        V = vec3.space(1)
        Vs = dual(vec3, V)
        homog = [h for h in itertools.product(V.elements, repeat=Vs.size)
                 if ch.kvec_homogeneous_predicate(vec3, Vs, h)]
        assert len(homog) == 3


class TestUltrafilterImages:
    @pytest.mark.parametrize("name", ["set", "gra", "mset"])
    def test_pushforward_of_an_ultrafilter_is_an_ultrafilter(self, name):
        plugin = get_plugin(name)
        from codensity.dualization import double_dual_on_morphism
        from codensity.kernel import enumerate_hom
        objs = [o for o in plugin.fp_objects_up_to(3) if o.size == 3]
        X, Y = objs[-1], plugin.cogenerator()
        homs = enumerate_hom(plugin, X, Y)
        assert homs
        for f in homs[:4]:
            fss = double_dual_on_morphism(plugin, f)
            ix = monad_by_intersection(plugin, X, 4, build_mult=False)
            Ys = dual(plugin, Y)
            for u in ix.carrier:
                view = plugin.collection_view(Y, Ys, fss(u))
                assert ch.is_ultrafilter(view)


class TestConeDescriptions:
    def test_pos_largest_element_description(self, posp):
        for X in posp.fp_objects_up_to(3):
            inst = monad_by_intersection(posp, X, 4, build_mult=False)
            assert ch.psi_largest_element_description(posp, inst)

    def test_jsl_largest_element_description(self, jslp):
        for X in jslp.fp_objects_up_to(3):
            inst = monad_by_intersection(jslp, X, 4, build_mult=False)
            assert ch.psi_largest_element_description(jslp, inst)


class TestOpenFilterPredicate:
    def test_sierpinski_filters(self, top0p):
        S = top0p.obj_from_opens((0, 1), [(1,)])
        good = [collection((0, 1), [{0, 1}]),
                collection((0, 1), [{0, 1}, {1}])]
        bad = [collection((0, 1), []),
               collection((0, 1), [{0, 1}, {1}, set()])]
        for U in good:
            assert ch.is_prime_open_filter(S, top0p, U)
        for U in bad:
            assert not ch.is_prime_open_filter(S, top0p, U)
