"""Exact-arithmetic workbench for oracle-relative algorithms on discontinuous
real functions: suprema, oscillation, moduli, continuity points via effective
Baire category, finite subcovers, Jordan decomposition, and the realiser
reductions that separate what rational sampling can and cannot see.
"""

from .exact import (Bracket, DyadicInterval, FueledBool, Q2, Rational, Truth,
                    ball, halve, rational_grid, unit_rationals)
from .sets import (ComplementOfR2Open, CountableSet, FinitePointSet, R2Rep,
                   RMCode, finite_set, sqrt2_family, tilde_set)
from .universe import (Baire1Limit, CoverPsi, CoverPsiUsco, Indicator, Penny,
                       PennyK, PiecewiseRational, Poly, SymbolicFn, Thomae,
                       TildePenny, build_cover_psi, build_penny, build_pennyk,
                       build_tilde, constant, constant_seq_limit, fn_difference,
                       fn_sum, indicator_baire1, linear, osc_exact,
                       osc_selfcheck, pennyk_limit, restrict_tags,
                       scalar_multiple, staircase, thomae)
from .oracle import (Baire1Above, CollapseRule, ExistsValueAbove,
                     ExistsValueBelow, Found, MuWitness, NotFoundBelow,
                     OscBelow, ValueBelowOnBall, admitting_rule,
                     collapse_rules_for, mu_search)
from .algorithms import (ContinuityModulus, LscoOnCfModulus, UscoModulus,
                         cousin_subcover, inf_usco, is_continuous_at,
                         lsco_modulus_on_cf, modulus_continuity_qc, modulus_qc,
                         natural_usco_modulus, osc_point,
                         point_of_continuity_qc, point_of_continuity_usco,
                         rm_code_from_r2_baire1, sup_baire1, sup_qc,
                         usco_separator)
from .variation import (JordanPair, OneSidedLimits, RegulationModulus,
                        jordan_nbv, jump_enum, limits_lr, modulus_regulation,
                        total_variation_nbv)
from .reductions import (AbyssReport, CliqModulusOracle, SupOracle,
                         adversarial_cliq_modulus, canonical_cliq_modulus,
                         canonical_regulation_modulus, cantor_diagonal,
                         demo_abyss, exhaustive_sup_oracle,
                         extract_enumeration_from_sup, naive_rational_sup,
                         realiser_from_cliq_modulus,
                         realiser_from_regulation_modulus, realiser_from_sup)
from .errors import (ClassRefusal, ConstructionError, DomainError,
                     FuelExhausted, InvalidModulus, NotPointwiseEvaluable,
                     OracleInconsistency, RepresentationInsufficient,
                     UnsupportedVariant)

__version__ = "0.1.0"
