"""Exact matrix-factorisation toolkit for quasi-homogeneous potentials."""

from .rat import Rat, rat, rat_str
from .coeffring import CoefficientTower, TowerElement, TowerError, NotAUnitError
from .polyring import (
    ParseError,
    Polynomial,
    WeightedRing,
    central_charge,
    exact_quotient,
    is_potential,
    monomials_of_degree,
    parse_polynomial,
    poly_to_string,
    transport,
)
from .jacobian import (
    InfiniteQuotientError,
    MilnorData,
    groebner,
    milnor_basis,
    normal_form,
    residue,
)
from .mfcore import (
    Grading,
    GradingError,
    MatrixFactorisation,
    QuantumDims,
    adjoint_left,
    adjoint_right,
    check_orbifold_necessary,
    det_check,
    direct_sum,
    external_tensor,
    grading_of,
    infer_grading,
    quantum_dims,
    shift,
    supertrace_product,
    validate_mf,
)
from .galois import (
    CyclotomicField,
    GaloisElement,
    cft_root,
    cyclotomic,
    cyclotomic_polynomial,
    galois_apply,
    galois_orbit,
    permute_index_set,
    verify_root_expression,
)
from .catalog import (
    ADEType,
    IndexSet,
    WitnessParams,
    ade_potential,
    e6_monoid,
    equivalence_classes,
    knoerrer_mf,
    monoid_index_sets,
    permutation_mf,
    permutation_quantum_dims,
    unit_mf,
    witness,
    witness_parameter_relation,
    witness_quantum_dims,
    witness_tower,
)
from .homcat import (
    DegreeSpectrum,
    DescaleError,
    FieldCheckError,
    HomSetup,
    MorphismError,
    MorphismMatrix,
    certify_field,
    charge_step,
    descale,
    hom_dim,
    hom_spectrum,
    is_strict_isomorphism,
)

__version__ = "0.1.0"
