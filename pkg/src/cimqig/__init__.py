"""Groebner bases of characteristic imset ideals by quasi-independence gluing."""

from .core_algebra import Binomial, GroebnerBasis, VariableTable, WeightOrder, buchberger, canonical_basis, reduce
from .graphs_dags import Dag, Pattern, UndirectedGraph, enumerate_meq, characteristic_imset, psi_map
from .quasi_independence import GluingRule, induced_cycles, is_chordal_bipartite, universal_gb
from .toric_oracle import MonomialMap, certify_gb_of_kernel, kernel_binomials_up_to_degree
from .qig_engine import is_strongly_Q_homogeneous, is_weakly_Q_homogeneous, lift_binomial, qig_groebner
from .cim_pipeline import cycle_generating_set_attempt, tree_gb, verify_cycle_factorization, weak_homogeneity_cone

__version__ = "0.1.0"
