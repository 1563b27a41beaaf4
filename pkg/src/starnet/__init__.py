"""Exact analysis of complex projective line arrangements.

Multinets, orbifold pencils, translated jump-locus components and Aomoto
complex torsion, all in exact arithmetic over Q(sqrt 5)(sin 2pi/5).
"""

from .field import (FieldElement, Rational, embed_real, parse_element,
                    serialize_element, trig_constants)
from .mpoly import (MultiPoly, UniPoly, dehomogenize, exact_divide,
                    factor_multiplicity, homogenize, kth_root,
                    restrict_to_line, uni_squarefree)
from .arrangement import (Arrangement, IntersectionPoint, Line, build,
                          builtin, delete, is_essential, lattice, render_svg)
from .multinet import (Multinet, MultinetReport, Pencil, builtin_pencil,
                       check_multinet, enumerate_multinets, find_pointed,
                       multinet_pencil)
from .fibration import (FiberAnalysis, FibrationReport, V1Component, analyze,
                        analyze_fiber, fiber_polynomial, lambda_candidates,
                        orbifold_v1_shape, pointed_vs_fiber,
                        translated_component)
from .aomoto import (AomotoComplex, H2Report, OS2Basis, SNFResult,
                     aomoto_complex, h2_torsion, os2_basis, reduce_product,
                     snf)

__version__ = "0.1.0"
