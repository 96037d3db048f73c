"""Exact computations in the finitary general linear group over Z/p^k:
double cosets of the depth subgroups, their train multiplication, generation
by permutations and GL^[m], and orbit counts on vectors and covectors."""
from .cosets import (DoubleCoset, ReductionCertificate, coset_dist, coset_eq,
                     localize_conjugators, normalize_to_window)
from .factor import Factor, generator_factorization, verify_factorization
from .matrix import (GroupElement, ResidueMatrix, SubgroupSpec, mat_inverse, mat_mul,
                     membership, metric_d, permutation_embed, theta)
from .orbits import OrbitState, VectorFin, act, orbit_count, orbit_stabilization
from .residue import Modulus, Residue
from .search import Outcome, SearchBudget, Verdict
from .train import (TrainCoset, TupleElement, associativity_check, circ_representative,
                    stabilization_limit, train_coset_eq, train_product)

__all__ = [
    "DoubleCoset", "ReductionCertificate", "coset_dist", "coset_eq", "localize_conjugators",
    "normalize_to_window", "Factor", "generator_factorization", "verify_factorization",
    "GroupElement", "ResidueMatrix", "SubgroupSpec", "mat_inverse", "mat_mul", "membership",
    "metric_d", "permutation_embed", "theta", "OrbitState", "VectorFin", "act", "orbit_count",
    "orbit_stabilization", "Modulus", "Residue", "Outcome", "SearchBudget", "Verdict",
    "TrainCoset", "TupleElement", "associativity_check", "circ_representative",
    "stabilization_limit", "train_coset_eq", "train_product",
]
