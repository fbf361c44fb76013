"""Truncated power series in q^(1/4) with exact rational coefficients.

Exponents are integer quarter-exponents of q = e^(pi i t): a lattice vector of
norm k sits at quarter-exponent 4k, a characteristic vector of norm k at
quarter-exponent k. A series knows every coefficient below ``prec``.
"""

from collections.abc import Iterator, Mapping
from fractions import Fraction
from numbers import Rational

from sympy import divisor_sigma

from shadowlab.exceptions import SeriesError


class QSeries:
    """Immutable sparse series ``sum c_e q^(e/4)`` known below ``prec``."""

    __slots__ = ("_coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, int | Fraction] | None = None, prec=1):
        if prec < 0:
            raise SeriesError(f"Precision must be non-negative, got {prec}")
        stored: dict[int, Fraction] = {}
        for exponent, value in (coeffs or {}).items():
            if exponent < 0:
                raise SeriesError(f"Negative quarter-exponent {exponent}")
            if exponent < prec and value != 0:
                stored[exponent] = Fraction(value)
        self._coeffs = dict(sorted(stored.items()))
        self.prec = prec

    @classmethod
    def one(cls, prec: int) -> "QSeries":
        return cls({0: 1}, prec)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int], unit: int, prec: int) -> "QSeries":
        """Build a series from norm counts placed at quarter-exponent unit * norm.

        Args:
            counts: Number of vectors (or words) per norm.
            unit: Quarter-exponents per unit of norm, 4 for lattice norms and 1
                for characteristic norms.
            prec: Truncation of the resulting series.
        """
        return cls({unit * norm: count for norm, count in counts.items()}, prec)

    def coefficient(self, exponent: int) -> Fraction:
        if exponent >= self.prec:
            raise SeriesError(
                f"Coefficient at {exponent} is unknown (precision {self.prec})"
            )
        return self._coeffs.get(exponent, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(self._coeffs.items())

    def coefficients(self, up_to: int | None = None) -> list[Fraction]:
        """Dense coefficient list for exponents below ``up_to`` (default prec)."""
        stop = self.prec if up_to is None else min(up_to, self.prec)
        return [self._coeffs.get(e, Fraction(0)) for e in range(stop)]

    def valuation(self) -> int | None:
        """Lowest exponent with a non-zero coefficient, None for the zero series."""
        return next(iter(self._coeffs), None)

    def truncate(self, prec: int) -> "QSeries":
        return QSeries(self._coeffs, min(prec, self.prec))

    def scale_exponents(self, factor: int) -> "QSeries":
        """Substitute t -> factor * t, multiplying every exponent by ``factor``."""
        if factor < 1:
            raise SeriesError(f"Exponent factor must be positive, got {factor}")
        return QSeries(
            {factor * e: c for e, c in self._coeffs.items()}, factor * self.prec
        )

    def __add__(self, other: "QSeries") -> "QSeries":
        return qs_add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return qs_add(self, -other)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self._coeffs.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        if isinstance(other, Rational):
            scalar = Fraction(other)
            return QSeries({e: scalar * c for e, c in self._coeffs.items()}, self.prec)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "QSeries":
        return qs_pow(self, exponent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        return self.truncate(prec)._coeffs == other.truncate(prec)._coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = ", ".join(f"{e}: {c}" for e, c in self._coeffs.items())
        return f"QSeries({{{terms}}}, prec={self.prec})"


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    prec = min(a.prec, b.prec)
    total: dict[int, Fraction] = {}
    for series in (a, b):
        for exponent, value in series.items():
            if exponent < prec:
                total[exponent] = total.get(exponent, Fraction(0)) + value
    return QSeries(total, prec)


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at the smaller precision."""
    prec = min(a.prec, b.prec)
    right = list(b.items())
    product: dict[int, Fraction] = {}
    for ea, ca in a.items():
        if ea >= prec:
            break
        for eb, cb in right:
            exponent = ea + eb
            if exponent >= prec:
                break
            product[exponent] = product.get(exponent, Fraction(0)) + ca * cb
    return QSeries(product, prec)


def qs_pow(a: QSeries, exponent: int) -> QSeries:
    if exponent < 0:
        raise SeriesError(f"Negative power {exponent} of a series")
    result = QSeries.one(a.prec)
    base = a
    while exponent:
        if exponent & 1:
            result = qs_mul(result, base)
        exponent >>= 1
        if exponent:
            base = qs_mul(base, base)
    return result


def _check_prec(prec: int):
    if prec <= 0:
        raise SeriesError(f"Precision must be positive, got {prec}")


def theta_z(prec: int) -> QSeries:
    """Theta series of Z: 1 + 2q + 2q^4 + 2q^9 + ..."""
    _check_prec(prec)
    coeffs = {0: 1}
    m = 1
    while 4 * m * m < prec:
        coeffs[4 * m * m] = 2
        m += 1
    return QSeries(coeffs, prec)


def theta_z_shadow(prec: int) -> QSeries:
    """Shadow theta series of Z: 2q^(1/4) + 2q^(9/4) + 2q^(25/4) + ..."""
    _check_prec(prec)
    coeffs = {}
    m = 0
    while (2 * m + 1) ** 2 < prec:
        coeffs[(2 * m + 1) ** 2] = 2
        m += 1
    return QSeries(coeffs, prec)


def theta_e8(prec: int) -> QSeries:
    """Theta series of E8 from its Lambert series, 1 + 240 sum sigma_3(m) q^(2m)."""
    _check_prec(prec)
    coeffs = {0: 1}
    m = 1
    while 8 * m < prec:
        coeffs[8 * m] = 240 * int(divisor_sigma(m, 3))
        m += 1
    return QSeries(coeffs, prec)
