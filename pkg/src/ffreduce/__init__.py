"""Row-operation complexity of matrix reduction over finite fields."""

from .bounds import (component_counts, counting_bound_log, gl_order,
                     gl_order_log_q, theorem1_kmax)
from .cayley import bfs_histogram, bfs_table, distance_of, generators
from .elemword import (CanonicalWord, Word, canonicalize, eval_word,
                       invert_word, is_canonical)
from .field import FieldSpec, field_new
from .matrix import Matrix, OpCounter, apply_op, random_invertible
from .ops import AddMul, Scale, Swap
from .reduce import (default_stripe_width, gauss_jordan, striped_eliminate,
                     verify_reduction)

__version__ = "0.1.0"

__all__ = [
    "AddMul", "CanonicalWord", "FieldSpec", "Matrix", "OpCounter", "Scale", "Swap", "Word",
    "apply_op", "bfs_histogram", "bfs_table", "canonicalize", "component_counts",
    "counting_bound_log", "default_stripe_width", "distance_of", "eval_word", "field_new",
    "gauss_jordan", "generators", "gl_order", "gl_order_log_q", "invert_word", "is_canonical",
    "random_invertible", "striped_eliminate", "theorem1_kmax", "verify_reduction",
]
