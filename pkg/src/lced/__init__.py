"""Linear complementary equi-dual (LCED) codes: exact decision engine and conjecture harnesses."""

from .codes import CyclicSpec, LinearCode, cyclic, dual_code, e_membership, from_generator, is_lcp, min_distance, security_parameter
from .engine import Certificate, SearchStrategy, Status, Verdict, decide, witness_search
from .fields import Field, FieldElement, make_field, parse_field
from .matrix import Matrix
from .permutation import Permutation
from .polynomial import Polynomial

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CyclicSpec",
    "Field",
    "FieldElement",
    "LinearCode",
    "Matrix",
    "Permutation",
    "Polynomial",
    "SearchStrategy",
    "Status",
    "Verdict",
    "cyclic",
    "decide",
    "dual_code",
    "e_membership",
    "from_generator",
    "is_lcp",
    "make_field",
    "min_distance",
    "parse_field",
    "security_parameter",
    "witness_search",
]
