"""
Helpers shared by the jet algebra, the numerical methods and the command line.
"""

from .numbers import format_complex, format_fraction, parse_complex, to_fraction
from .sampling import make_rng, residual_nodes, seed_from_env
from .serialization import to_canonical_json
