"""Exact computations in U_q(gl_N) and the twisted algebra U'_q(sp_2n)."""

from .scalar import Q, QDIFF, QScalar, eval_at, qint
from .tensor import (OpMatrix, build_G, build_R, build_Rprime, check_reflection,
                     check_yang_baxter, rank)
from .rewrite import (LinComb, Word, normalize_gl, normalize_sp, parse_expr, theta,
                      weight_of_word)
from .gtrep import (GLModule, GTPattern, act_chevalley, enumerate_patterns, root_vectors,
                    rtf_generators)
from .twisted import (HighestWeight, NonDominantError, SPModule, build_L, embed_S,
                      omega0_pattern, sp2_module, verify_module, verma_truncated, weyl_dim_sp)

__version__ = "0.1.0"
