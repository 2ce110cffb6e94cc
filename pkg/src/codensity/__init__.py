"""Finite-model engine for codensity monads of small-object embeddings.

The monad of generalized ultrafilters is computed three independent ways
(double-dual intersection, coslice limit, smallest submonad of the
cogenerator product monad) and checked against closed-form descriptions on
every finite instance up to a size bound.
"""
from .kernel import (BudgetExceededError, ClosureError, Cone, FinDiagram,
                     FinMorphism, FinObject, InvalidMorphismError,
                     InvalidObjectError, Subobject, SubfunctorError,
                     compose, default_budget, enumerate_hom, global_elements,
                     identity, intersect_subobjects, limit, pullback)
from .plugins import ALL_CATEGORIES, CLOSED_CATEGORIES, get_plugin, z2_monoid
from .dualization import (double_dual, double_dual_on_morphism, dual,
                          dual_on_morphism, monad_structure_doubledual,
                          unit_eta)
from .dultrafilter import (derived_subobject, list_d_ultrafilters,
                           monad_by_intersection, t_on_morphism)
from .constructions import (codensity_by_limit, codensity_by_smonad,
                            compare_constructions, enrichment_structure_check,
                            natural_transformations, s_monad)

__all__ = [name for name in dir() if not name.startswith("_")]
