"""
Exact jet polynomials and their complex pairs.
"""
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import numpy as np

from ..errors import JetOrderOverflow, MissingGenerator
from ..utils.numbers import format_fraction, parse_complex
from .space import JET_ORDER_CAP, JetSpace, from_qq, jet_space, to_qq

Scalar = int | Fraction


def _is_scalar(value) -> bool:
    return isinstance(value, Rational) and not isinstance(value, bool)


def _strip(monomial: tuple[int, ...]) -> tuple[int, ...]:
    end = len(monomial)
    while end and not monomial[end - 1]:
        end -= 1
    return monomial[:end]


class JetPoly:
    """
    Polynomial with rational coefficients in t, x and the jets of u1, u2.

    Instances are immutable. Arithmetic between polynomials of different caps happens in the larger space.

    Parameters
    ----------
    element : sympy.polys.rings.PolyElement
        Element of ``space.ring``.
    space : JetSpace
        Jet space the element belongs to.
    """

    def __init__(self, element, space: JetSpace):
        if element.ring != space.ring:
            raise ValueError("Polynomial does not belong to the given jet space")
        self._element = element
        self._space = space

    # constructors

    @classmethod
    def zero(cls, cap: int = JET_ORDER_CAP) -> "JetPoly":
        space = jet_space(cap)
        return cls(space.ring.zero, space)

    @classmethod
    def constant(cls, value: Scalar, cap: int = JET_ORDER_CAP) -> "JetPoly":
        space = jet_space(cap)
        return cls(space.ring.ground_new(to_qq(value)), space)

    @classmethod
    def generator(cls, name: str, cap: int = JET_ORDER_CAP) -> "JetPoly":
        space = jet_space(cap)
        return cls(space.ring.gens[space.name_index(name)], space)

    @classmethod
    def t(cls, cap: int = JET_ORDER_CAP) -> "JetPoly":
        return cls.generator("t", cap)

    @classmethod
    def x(cls, cap: int = JET_ORDER_CAP) -> "JetPoly":
        return cls.generator("x", cap)

    @classmethod
    def jet(cls, component: int, order: int = 0, cap: int = JET_ORDER_CAP) -> "JetPoly":
        """``order``-th x-derivative of ``u{component}``."""
        if order > cap:
            raise JetOrderOverflow(f"u{component} of order {order} exceeds the cap {cap}")
        space = jet_space(cap)
        return cls(space.ring.gens[space.index(component, order)], space)

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, ...], Scalar], cap: int = JET_ORDER_CAP) -> "JetPoly":
        """Build from ``{exponent tuple: coefficient}``; tuples shorter than the space are zero padded."""
        space = jet_space(cap)
        data = {}
        for monomial, coefficient in terms.items():
            if len(monomial) > space.ngens:
                if any(monomial[space.ngens :]):
                    raise JetOrderOverflow(f"Monomial {monomial} does not fit the cap {cap}")
                monomial = monomial[: space.ngens]
            monomial = tuple(monomial) + (0,) * (space.ngens - len(monomial))
            data[monomial] = data.get(monomial, 0) + Fraction(coefficient)
        return cls(space.ring.from_dict({m: to_qq(c) for m, c in data.items() if c != 0}), space)

    # structure

    @property
    def element(self):
        """Underlying sympy ring element."""
        return self._element

    @property
    def space(self) -> JetSpace:
        return self._space

    @property
    def cap(self) -> int:
        return self._space.cap

    @cached_property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Monomial exponent tuples mapped to exact coefficients."""
        return {monomial: from_qq(coefficient) for monomial, coefficient in self._element.items()}

    @cached_property
    def order(self) -> int:
        """Largest derivative order of a jet variable present, ``-1`` when no jet variable occurs."""
        result = -1
        for monomial in self._element.keys():
            for index in range(len(monomial) - 1, 1, -1):
                if monomial[index]:
                    result = max(result, JetSpace.locate(index)[1])
                    break
        return result

    @property
    def is_zero(self) -> bool:
        return not self._element

    def is_constant(self) -> bool:
        return all(not any(monomial) for monomial in self._element.keys())

    def constant_term(self) -> Fraction:
        zero = (0,) * self._space.ngens
        return self.terms.get(zero, Fraction(0))

    def jet_degree_parts(self) -> dict[int, "JetPoly"]:
        """Split into parts of equal total degree in the jet variables."""
        parts: dict[int, dict] = {}
        for monomial, coefficient in self._element.items():
            degree = sum(monomial[2:])
            parts.setdefault(degree, {})[monomial] = coefficient
        return {degree: JetPoly(self._space.ring.from_dict(data), self._space) for degree, data in parts.items()}

    def uses(self, index: int) -> bool:
        return any(monomial[index] for monomial in self._element.keys())

    # spaces

    def widen(self, cap: int) -> "JetPoly":
        """Same polynomial in the space of a larger cap."""
        if cap == self.cap:
            return self
        if cap < self.cap:
            return self.narrow(cap)
        space = jet_space(cap)
        pad = (0,) * (space.ngens - self._space.ngens)
        data = {monomial + pad: coefficient for monomial, coefficient in self._element.items()}
        return JetPoly(space.ring.from_dict(data), space)

    def narrow(self, cap: int) -> "JetPoly":
        """Same polynomial in the space of a smaller cap."""
        if cap >= self.cap:
            return self.widen(cap)
        if self.order > cap:
            raise JetOrderOverflow(f"Polynomial of order {self.order} does not fit the cap {cap}")
        space = jet_space(cap)
        data = {monomial[: space.ngens]: coefficient for monomial, coefficient in self._element.items()}
        return JetPoly(space.ring.from_dict(data), space)

    def fit(self, cap: int) -> "JetPoly":
        """Move to the space of ``cap`` whether it is larger or smaller."""
        return self.widen(cap) if cap >= self.cap else self.narrow(cap)

    def _coerce(self, other) -> tuple["JetPoly", "JetPoly"] | None:
        if isinstance(other, JetPoly):
            cap = max(self.cap, other.cap)
            return self.widen(cap), other.widen(cap)
        if _is_scalar(other):
            return self, JetPoly.constant(other, self.cap)
        return None

    # arithmetic

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return JetPoly(left._element + right._element, left._space)

    __radd__ = __add__

    def __neg__(self):
        return JetPoly(-self._element, self._space)

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return JetPoly(left._element - right._element, left._space)

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return JetPoly(right._element - left._element, left._space)

    def __mul__(self, other):
        if _is_scalar(other):
            return JetPoly(self._element * to_qq(other), self._space)
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return JetPoly(left._element * right._element, left._space)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return JetPoly(self._element**exponent, self._space)

    def __eq__(self, other) -> bool:
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        left, right = pair
        return left._element == right._element

    def __hash__(self) -> int:
        # trailing zero exponents stripped so equal polynomials of different caps hash alike
        return hash(frozenset((_strip(monomial), coefficient) for monomial, coefficient in self.terms.items()))

    # calculus helpers

    def diff(self, index: int) -> "JetPoly":
        """Partial derivative with respect to the generator at position ``index``."""
        data = {}
        for monomial, coefficient in self._element.items():
            power = monomial[index]
            if power:
                shifted = monomial[:index] + (power - 1,) + monomial[index + 1 :]
                data[shifted] = coefficient * power
        return JetPoly(self._space.ring.from_dict(data), self._space)

    def partial(self, component: int, order: int) -> "JetPoly":
        """Partial derivative with respect to ``u{component}`` differentiated ``order`` times."""
        if order > self.cap:
            return JetPoly.zero(self.cap)
        return self.diff(JetSpace.index(component, order))

    def map_coefficients(self, weight) -> "JetPoly":
        """Multiply every monomial coefficient by ``weight(monomial)``; ``weight`` returns a rational."""
        data = {}
        for monomial, coefficient in self._element.items():
            data[monomial] = coefficient * to_qq(weight(monomial))
        return JetPoly(self._space.ring.from_dict(data), self._space)

    # evaluation

    @cached_property
    def _compiled(self) -> tuple[np.ndarray, np.ndarray]:
        monomials = list(self._element.keys())
        exponents = np.array(monomials, dtype=np.int64).reshape(len(monomials), self._space.ngens)
        coefficients = np.array([float(from_qq(c)) for c in self._element.values()], dtype=float)
        return exponents, coefficients

    def evaluate(self, values) -> np.ndarray | float:
        """
        Evaluate at numeric generator values.

        Parameters
        ----------
        values : Sequence
            One scalar or array per generator position (t, x, u1, u2, u1_x, ...). Positions the polynomial
            does not use may be ``None`` or be missing at the end.

        Returns
        -------
        float or numpy.ndarray
            Value broadcast over the shapes of the inputs.

        Raises
        ------
        MissingGenerator
            If a used generator has no value.
        """
        exponents, coefficients = self._compiled
        if len(coefficients) == 0:
            return 0.0
        used = np.nonzero(exponents.any(axis=0))[0]
        arrays = {}
        for index in used:
            value = values[index] if index < len(values) else None
            if value is None:
                raise MissingGenerator(self._space.names[index])
            arrays[index] = np.asarray(value, dtype=float)
        result = 0.0
        for row, coefficient in zip(exponents, coefficients):
            term = coefficient
            for index in used:
                if row[index]:
                    term = term * arrays[index] ** int(row[index])
            result = result + term
        return result

    # text

    def to_json(self) -> dict:
        """Canonical JSON form: terms in ring order with exact ``"p/q"`` coefficients."""
        return {
            "cap": self.cap,
            "generators": list(self._space.names),
            "terms": [
                {"monomial": list(monomial), "coefficient": format_fraction(from_qq(coefficient))}
                for monomial, coefficient in self._element.terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "JetPoly":
        terms = {tuple(term["monomial"]): Fraction(term["coefficient"]) for term in data["terms"]}
        return cls.from_terms(terms, data.get("cap", JET_ORDER_CAP))

    def __str__(self) -> str:
        return str(self._element)

    def __repr__(self) -> str:
        return f"JetPoly({self._element}, cap={self.cap})"


class ComplexJetPoly:
    """
    Pair ``re + i*im`` of jet polynomials, used to write the equation and its multipliers in complex notation.

    Both parts live in the same jet space.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: JetPoly, im: JetPoly | None = None):
        if im is None:
            im = JetPoly.zero(re.cap)
        cap = max(re.cap, im.cap)
        self.re = re.widen(cap)
        self.im = im.widen(cap)

    @classmethod
    def constant(cls, value, cap: int = JET_ORDER_CAP) -> "ComplexJetPoly":
        """Constant from anything ``parse_complex`` accepts, e.g. ``"1/2-3i"`` or ``(Fraction(1, 2), -3)``."""
        re_part, im_part = parse_complex(value)
        return cls(JetPoly.constant(re_part, cap), JetPoly.constant(im_part, cap))

    @classmethod
    def u(cls, order: int = 0, cap: int = JET_ORDER_CAP) -> "ComplexJetPoly":
        """``order``-th x-derivative of u = u1 + i u2."""
        return cls(JetPoly.jet(1, order, cap), JetPoly.jet(2, order, cap))

    @classmethod
    def ubar(cls, order: int = 0, cap: int = JET_ORDER_CAP) -> "ComplexJetPoly":
        """``order``-th x-derivative of the conjugate u1 - i u2."""
        return cls(JetPoly.jet(1, order, cap), -JetPoly.jet(2, order, cap))

    @classmethod
    def imaginary_unit(cls, cap: int = JET_ORDER_CAP) -> "ComplexJetPoly":
        return cls(JetPoly.zero(cap), JetPoly.constant(1, cap))

    @property
    def cap(self) -> int:
        return self.re.cap

    @property
    def order(self) -> int:
        return max(self.re.order, self.im.order)

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def conj(self) -> "ComplexJetPoly":
        return ComplexJetPoly(self.re, -self.im)

    def widen(self, cap: int) -> "ComplexJetPoly":
        return ComplexJetPoly(self.re.widen(cap), self.im.widen(cap))

    def narrow(self, cap: int) -> "ComplexJetPoly":
        return ComplexJetPoly(self.re.narrow(cap), self.im.narrow(cap))

    @staticmethod
    def _lift(other):
        if isinstance(other, ComplexJetPoly):
            return other
        if isinstance(other, JetPoly):
            return ComplexJetPoly(other)
        if _is_scalar(other):
            return ComplexJetPoly(JetPoly.constant(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ComplexJetPoly(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexJetPoly(-self.re, -self.im)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ComplexJetPoly(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if _is_scalar(other):
            return ComplexJetPoly(self.re * other, self.im * other)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ComplexJetPoly(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = ComplexJetPoly(JetPoly.constant(1, self.cap))
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def evaluate(self, values) -> np.ndarray | complex:
        return self.re.evaluate(values) + 1j * np.asarray(self.im.evaluate(values))

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    def __repr__(self) -> str:
        return f"ComplexJetPoly(re={self.re}, im={self.im})"
