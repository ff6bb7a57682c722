"""
Jet spaces: exact polynomial rings over QQ whose generators are t, x and the x-derivatives of the components u1, u2
of the complex unknown u = u1 + i u2, up to a derivative-order cap.

Generators are interleaved by order (t, x, u1, u2, u1_x, u2_x, ...), so a space with a larger cap extends the
generator list of a smaller one and moving polynomials between spaces only pads or trims exponent tuples.
"""
from fractions import Fraction
from functools import lru_cache

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

JET_ORDER_CAP = 7
T_INDEX = 0
X_INDEX = 1
COMPONENTS = (1, 2)


def jet_name(component: int, order: int) -> str:
    """Generator name of the ``order``-th x-derivative of ``u{component}``: u1, u1_x, u1_xx, u1_xxx, u1_4x, ..."""
    if order == 0:
        return f"u{component}"
    if order <= 3:
        return f"u{component}_" + "x" * order
    return f"u{component}_{order}x"


def to_qq(value):
    """Exact QQ element from an int, a Fraction or a ``"p/q"`` string."""
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value) -> Fraction:
    """Fraction from a QQ element."""
    return Fraction(int(value.numerator), int(value.denominator))


class JetSpace:
    """
    Polynomial ring of one derivative-order cap.

    Attributes
    ----------
    cap : int
        Highest x-derivative order of u1, u2 among the generators.
    ring : sympy.polys.rings.PolyRing
        Sparse ring over QQ in graded lexicographic order.
    names : tuple[str, ...]
        Generator names in ring order.
    """

    def __init__(self, cap: int):
        if cap < 0:
            raise ValueError("Derivative-order cap must be non-negative")
        self.cap = cap
        names = ["t", "x"]
        for order in range(cap + 1):
            names.extend(jet_name(component, order) for component in COMPONENTS)
        self.names = tuple(names)
        self.ring = PolyRing(",".join(names), QQ, grlex)

    @property
    def ngens(self) -> int:
        return len(self.names)

    @staticmethod
    def index(component: int, order: int) -> int:
        """Position of ``u{component}`` differentiated ``order`` times in the exponent tuple."""
        if component not in COMPONENTS:
            raise ValueError(f"Unknown component u{component}")
        return 2 + 2 * order + (component - 1)

    @staticmethod
    def locate(index: int) -> tuple[int, int]:
        """Inverse of ``index``: ``(component, order)`` of a jet generator position."""
        if index < 2:
            raise ValueError("Position does not hold a jet variable")
        order, offset = divmod(index - 2, 2)
        return offset + 1, order

    def name_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as exc:
            raise KeyError(f"Generator {name} is not in the jet space of cap {self.cap}") from exc

    def __repr__(self) -> str:
        return f"JetSpace(cap={self.cap})"


@lru_cache(maxsize=None)
def jet_space(cap: int = JET_ORDER_CAP) -> JetSpace:
    """Shared jet space of the given cap."""
    return JetSpace(cap)
