"""Exact symbolic kernel for quantized enveloping algebras, their twisted
orthogonal and symplectic coideal subalgebras, and twisted q-Yangians, with
machine verification of the defining identities at desk scale."""

from .scalars import (LaurentPoly, ScalarFraction, VarTable, frac_eq,
                      parse_poly, QV, QUV, QUVV)
from .freealg import (Alphabet, GenSym, NcPoly, NcPoly2, primed,
                      tensor2_apply_delta)
from .presentations import (Presentation, GeneratorOrder, NotOrientable,
                            ResourceLimitExceeded, WindowInsufficiency,
                            build_presentation, presentation,
                            confluence_probe, independence_rank,
                            derive_relations, orient)
from .tensorcalc import (OperatorMatrix, embed, identity, partial_transpose,
                         q_antisymmetrizer, r_const, r_spectral,
                         verify_tensor_identities)
from .report import VerificationReport

__version__ = "0.1.0"
