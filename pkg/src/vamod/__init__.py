"""Exact construction and verification of finite-dimensional modules over
differential fields of rational functions, and their twisted extensions to
quadratic field extensions."""

from .errors import (Inadmissible, NotInvertible, NotSeparable, ParseError,
                     PrecisionExhausted, PredicateMismatch, SingularMatrix,
                     TowerExhausted, VamodError)
from .lift import (LiftProblem, derivation_compat_check, descent_check, lift_residual,
                   lift_root, semisimple_root, uniqueness_probe)
from .modbuild import (CaseReport, DerivationSpec, ModuleData, build_module, classify_cases,
                       eval_rational, ode_residual)
from .numeric import (GAUSS, RAT, Alg, I, Poly, Tower, adjoin_sqrt, field_sqrt, poly_gcd,
                      scalar, squarefree_check)
from .series import PuiseuxSeries, poly_at_series, series_inv, series_mul, series_sqrt, support_check
from .twist import (QuadExt, TwistedStructure, build_twisted_structure, galois_conjugate,
                    structures_equivalent, twist_classify)
from .utmatrix import UTMatrix, superdiag_part, toeplitz_check, ut_inverse
from .verify import VerifyReport, borcherds_adjoint, check_twisted, check_untwisted

__version__ = "0.1.0"
