"""ringdef: exact computation with unit groups and the subrings they define.

Orders in number fields are represented by explicit multiplication
tables, elements by integer coordinate vectors, and ideals by Hermite
normal form lattices, so every computation in the package is exact.  On
top of that sit unit groups (fundamental units, bounded enumeration,
modular powers), the congruence-defined subrings built from the relation
delta - 1 = (eps - 1) x mod (eps - 1)^2, unit-equation searches with
exact refutation certificates, a constructive builder of units with
prescribed residues, a small bounded-quantifier formula language, and an
experiment runner with replayable JSON reports.
"""

from .exact import CapExceeded, NotInvertible, Poly, affine_compose, hnf, multiplicative_order
from .orders import (
    IdealLattice,
    OrderContext,
    QuotientRing,
    QuotientTooLarge,
    RingElement,
    congruent_mod_ideal,
    make_compositum_order,
    make_quadratic_order,
    make_rational_order,
    norm_elem,
    trace_elem,
)
from .rings import (
    CongruenceClass,
    SubringDescription,
    Verdict,
    combine_witnesses,
    congruence_ring_finite_units,
    membership_probe,
    norm_descend,
    ratio_witness_probe,
    solution_class,
)
from .units import (
    UnitExpression,
    UnitGroupDescription,
    congruence_subgroup,
    declared_unit_group,
    enumerate_units,
    fundamental_unit,
    unit_group,
    unit_residue,
)

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "CongruenceClass",
    "IdealLattice",
    "NotInvertible",
    "OrderContext",
    "Poly",
    "QuotientRing",
    "QuotientTooLarge",
    "RingElement",
    "SubringDescription",
    "UnitExpression",
    "UnitGroupDescription",
    "Verdict",
    "affine_compose",
    "combine_witnesses",
    "congruence_ring_finite_units",
    "congruence_subgroup",
    "congruent_mod_ideal",
    "declared_unit_group",
    "enumerate_units",
    "fundamental_unit",
    "hnf",
    "make_compositum_order",
    "make_quadratic_order",
    "make_rational_order",
    "membership_probe",
    "multiplicative_order",
    "norm_descend",
    "norm_elem",
    "ratio_witness_probe",
    "solution_class",
    "trace_elem",
    "unit_group",
    "unit_residue",
    "__version__",
]
