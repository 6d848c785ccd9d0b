"""Polynomials in one formal parameter, and series whose coefficients are such.

The formal parameter stands for a spin label z or the balanced-representation
parameter p, depending on context; the arithmetic never cares.  A PolySeries
is simply a :class:`~lorentzknots.series.TruncatedSeries` whose coefficients
are :class:`ParamPolynomial` values -- the two-variable object behind the
interpolated spin expansions.

Exact Lagrange interpolation over Q(i) lives here too: it reconstructs each
h-order's degree-bounded polynomial from sampled half-integer spins with no
conditioning concerns.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, GR_ONE, GR_ZERO, to_big
from .series import TruncatedSeries

__all__ = [
    "ParamPolynomial",
    "PolySeries",
    "poly_constant",
    "poly_variable",
    "constant_poly_series",
    "specialize",
    "lagrange_interpolate",
]


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


class ParamPolynomial:
    """Polynomial in one formal parameter with Gaussian-rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        object.__setattr__(
            self, "coeffs", _trim(GaussianRational.coerce(c) for c in coeffs)
        )

    def __setattr__(self, name, value):
        raise AttributeError("ParamPolynomial is immutable")

    # -- basics ---------------------------------------------------------

    def degree(self) -> int:
        """Largest exponent with nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant(self) -> GaussianRational:
        return self.coeffs[0] if self.coeffs else GR_ZERO

    def is_even(self) -> bool:
        """True when only even powers of the parameter appear."""
        return all(not c for c in self.coeffs[1::2])

    def coefficient(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else GR_ZERO

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, ParamPolynomial):
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return ParamPolynomial([GaussianRational.coerce(x)])
        return None

    def __add__(self, other):
        other = ParamPolynomial._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ParamPolynomial(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = ParamPolynomial._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return ParamPolynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        other = ParamPolynomial._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ParamPolynomial()
        out = [GR_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ParamPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            inv = GR_ONE / GaussianRational.coerce(other)
            return self * inv
        if isinstance(other, ParamPolynomial) and other.is_constant():
            return self / other.constant()
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers of a polynomial are not defined")
        result = ParamPolynomial([GR_ONE])
        for _ in range(n):
            result = result * self
        return result

    # -- evaluation / substitution ----------------------------------------

    def evaluate(self, point) -> GaussianRational:
        """Exact evaluation at a Gaussian-rational point (Horner)."""
        point = GaussianRational.coerce(point)
        acc = GR_ZERO
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def evaluate_big(self, point):
        """Evaluation at an mpc point at current working precision."""
        acc = to_big(0)
        point = to_big(point)
        for c in reversed(self.coeffs):
            acc = acc * point + to_big(c)
        return acc

    def compose_affine(self, a, b) -> "ParamPolynomial":
        """Substitute x -> a*y + b, returning the polynomial in y."""
        a = GaussianRational.coerce(a)
        b = GaussianRational.coerce(b)
        lin = ParamPolynomial([b, a])
        acc = ParamPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    # -- protocol -----------------------------------------------------------

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = ParamPolynomial._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ParamPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"({c})*x")
            else:
                parts.append(f"({c})*x^{k}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


# A PolySeries is a TruncatedSeries whose coefficients are ParamPolynomials.
PolySeries = TruncatedSeries

POLY_ZERO = ParamPolynomial()
POLY_ONE = ParamPolynomial([GR_ONE])


def poly_constant(value) -> ParamPolynomial:
    return ParamPolynomial([GaussianRational.coerce(value)])


def poly_variable() -> ParamPolynomial:
    """The polynomial x itself."""
    return ParamPolynomial([GR_ZERO, GR_ONE])


def constant_poly_series(value, order: int) -> PolySeries:
    return TruncatedSeries(order, [poly_constant(value)] + [POLY_ZERO] * order)


def specialize(series: PolySeries, point) -> TruncatedSeries:
    """Evaluate every polynomial coefficient at a Gaussian-rational point.

    Specialization commutes with all ring operations, which is what makes
    sampling at half-integer spins and interpolating legitimate.
    """
    point = GaussianRational.coerce(point)
    return TruncatedSeries(
        series.order, [c.evaluate(point) for c in series.coeffs]
    )


def lagrange_interpolate(nodes, values) -> ParamPolynomial:
    """Exact Lagrange interpolation through (node, value) pairs over Q(i).

    ``nodes`` must be pairwise distinct Gaussian-rational points.  The result
    has degree at most len(nodes) - 1.
    """
    nodes = [GaussianRational.coerce(x) for x in nodes]
    values = [GaussianRational.coerce(v) for v in values]
    if len(nodes) != len(values):
        raise ValueError("node/value count mismatch")
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be distinct")
    total = ParamPolynomial()
    for i, (xi, yi) in enumerate(zip(nodes, values)):
        if not yi:
            continue
        basis = poly_constant(yi)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            basis = basis * ParamPolynomial([-xj, GR_ONE]) / (xi - xj)
        total = total + basis
    return total
