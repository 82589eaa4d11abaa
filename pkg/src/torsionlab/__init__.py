"""Abelian L2-Alexander torsion of knot exteriors.

The package is layered bottom-up:

``groupring``  free-group words, group-ring elements, Laurent polynomials and matrices
``fkdet``      Fuglede-Kadison determinants over N(Z)
``chain``      based chain complexes, L2-torsion, Euler decorations, duality
``knot``       braid / PD parsing, Wirtinger presentations, Fox calculus
``alexl2``     the torsion function t -> tau(t) and its symmetry exponent
``verify``     randomized invariant suites
"""

__version__ = "0.1.0"

from .groupring import (AbelianizationMap, GroupWord, LaurentMatrix, LaurentPoly, RingElement,
                        dual_representation, gamma_t, ring_involve, specialize)
from .fkdet import (FkConvergenceError, FkResult, NotDeterminantClassError, QuadratureSettings,
                    fk_det, fk_det_scalar, fk_det_square_poly, laurent_det, mahler_jensen)
from .chain import (BasedChainComplex, ChainComplexError, TorsionValue, act_euler, direct_sum,
                    dualize, l2_betti_generic, scalar_complex, torsion, torus_complex)
from .knot import (BraidWord, DiagramError, KnotParseError, PDCode, WirtingerPresentation,
                   alexander_polynomial, braid_to_pd, get_knot, parse_braid, parse_pd,
                   presentation_complex, wirtinger)
from .alexl2 import (AdmissibleTripleAbelian, NotAdmissibleError, SymmetryReport,
                     TorsionFunction, VacuousSymmetryError, monomial_offset, real_scale,
                     symmetry_report, torsion_function, torsion_quadrature, torsion_roots,
                     triple_from_knot)
