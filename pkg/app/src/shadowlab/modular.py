"""Theta series of unimodular lattices in the Hecke basis.

Every theta series of a rank-n unimodular lattice is a polynomial in
X = theta_Z and Y = theta_E8. It is stored in the difference basis
X^(n-8j) * D^j with D = X^8 - Y = 16q + ..., which makes the coefficient
solve triangular with pivots 16^j.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from shadowlab.exceptions import NoSuchLatticeError, RankError, SeriesError
from shadowlab.qseries import QSeries, theta_e8, theta_z, theta_z_shadow

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeckePoly:
    """Coefficients a_j of sum_j a_j X^(n-8j) (X^8 - Y)^j."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise RankError(f"Rank must be positive, got {self.n}")
        if len(self.coeffs) != self.n // 8 + 1:
            raise SeriesError(
                f"Rank {self.n} needs {self.n // 8 + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def to_monomial(self) -> tuple[Fraction, ...]:
        """Coefficients c_i of X^(n-8i) Y^i, expanding each (X^8 - Y)^j."""
        size = len(self.coeffs)
        return tuple(
            (-1) ** i * sum(comb(j, i) * self.coeffs[j] for j in range(i, size))
            for i in range(size)
        )


def _basis_series(n: int, j: int, x: QSeries, y: QSeries) -> QSeries:
    return (x ** (n - 8 * j)) * ((x**8 - y) ** j)


def decompose(n: int, leading) -> HeckePoly:
    """Solve for the Hecke coefficients from the first norm counts.

    Args:
        n: Rank of the lattice.
        leading: Norm counts N_0, ..., N_floor(n/8).

    Returns:
        HeckePoly: The unique polynomial whose theta series starts with
        ``leading``.

    Raises:
        RankError: If n is not positive.
        SeriesError: If ``leading`` has the wrong length.
    """
    if n < 1:
        raise RankError(f"Rank must be positive, got {n}")
    leading = [Fraction(value) for value in leading]
    size = n // 8 + 1
    if len(leading) != size:
        raise SeriesError(f"Rank {n} needs {size} leading counts, got {len(leading)}")

    prec = 4 * (size - 1) + 1
    x, y = theta_z(prec), theta_e8(prec)
    basis = [_basis_series(n, j, x, y) for j in range(size)]

    coeffs: list[Fraction] = []
    for k in range(size):
        known = sum(
            (coeffs[j] * basis[j].coefficient(4 * k) for j in range(k)), Fraction(0)
        )
        pivot = basis[k].coefficient(4 * k)
        coeffs.append((leading[k] - known) / pivot)
    logger.debug(f"Decomposed rank {n} theta series into {coeffs}")
    return HeckePoly(n, tuple(coeffs))


def decompose_series(n: int, theta: QSeries) -> HeckePoly:
    """Like ``decompose`` but reads N_0, ..., N_floor(n/8) off a theta series."""
    return decompose(n, [theta.coefficient(4 * k) for k in range(n // 8 + 1)])


def _combine(p: HeckePoly, x: QSeries, y: QSeries, prec: int) -> QSeries:
    total = QSeries({}, prec)
    for j, a in enumerate(p.coeffs):
        if a:
            total = total + a * _basis_series(p.n, j, x, y)
    return total


def evaluate(p: HeckePoly, prec: int) -> QSeries:
    """Theta series sum_j a_j theta_Z^(n-8j) (theta_Z^8 - theta_E8)^j."""
    return _combine(p, theta_z(prec), theta_e8(prec), prec)


def shadow_series(p: HeckePoly, prec: int) -> QSeries:
    """Shadow theta series: theta_Z replaced by its shadow, theta_E8 kept.

    The coefficient at quarter-exponent k is the number of characteristic
    vectors of norm k.
    """
    return _combine(p, theta_z_shadow(prec), theta_e8(prec), prec)


def shadow_valuation(p: HeckePoly, prec: int | None = None) -> int | None:
    """Norm of the shortest characteristic vectors predicted by ``p``."""
    return shadow_series(p, prec or p.n + 1).valuation()


def extremal_n2(n: int) -> int:
    return 2 * n * (23 - n)


def extremal_shadow_count(n: int) -> Fraction:
    """Number of characteristic vectors of norm n-8 of an extremal lattice."""
    return Fraction(2) ** (n - 11) * n


def extremal_theta(n: int) -> HeckePoly:
    """Theta series of a rank-n lattice with no norm-1 vectors and N_2 minimal.

    Raises:
        RankError: If n is outside 8..23.
    """
    if not 8 <= n <= 23:
        raise RankError(f"Extremal theta series exists for ranks 8..23, got {n}")
    coeffs = [Fraction(1), Fraction(-n, 8)] + [Fraction(0)] * (n // 8 - 1)
    return HeckePoly(n, tuple(coeffs))


def predict_shadow_defect(n: int, n2: int) -> Fraction:
    """Number of characteristic vectors of norm n-16 forced by N_2.

    Args:
        n: Rank, 16 <= n <= 23.
        n2: Number of norm-2 vectors of a lattice without norm-1 vectors.

    Returns:
        Fraction: 2^(n-24) (N_2 - 2n(23-n)).

    Raises:
        RankError: If n is outside 16..23.
        NoSuchLatticeError: If the prediction is negative.
    """
    if not 16 <= n <= 23:
        raise RankError(f"Shadow defect is defined for ranks 16..23, got {n}")
    defect = Fraction(2) ** (n - 24) * (n2 - extremal_n2(n))
    if defect < 0:
        raise NoSuchLatticeError(
            f"No unimodular lattice of rank {n} without norm-1 vectors has "
            f"N2={n2} < {extremal_n2(n)}"
        )
    return defect


def congruence_modulus(n: int) -> int:
    return 2 ** (25 - n) if n < 24 else 2


def check_congruence(n: int, n2: int, even: bool) -> bool:
    """N_2 = 2n(23-n) mod max(2, 2^(25-n)), except for the even rank-16 lattices."""
    if n < 1:
        raise RankError(f"Rank must be positive, got {n}")
    if even and n == 16:
        return True
    return (n2 - extremal_n2(n)) % congruence_modulus(n) == 0


def excess_mod16(n: int, n2: int) -> bool:
    """Whether N_2 - 2n(23-n) is a multiple of 16."""
    return (n2 - extremal_n2(n)) % 16 == 0


@dataclass(frozen=True)
class RootCountStatus:
    extremal: bool
    shadow_defect: Fraction | None


def classify_n2(n: int, n2: int) -> RootCountStatus:
    """Place N_2 of a lattice without norm-1 vectors against the lower bound.

    Raises:
        RankError: If n is outside 8..23.
        NoSuchLatticeError: If N_2 is below the bound.
    """
    if not 8 <= n <= 23:
        raise RankError(f"The N2 bound applies to ranks 8..23, got {n}")
    if n2 < extremal_n2(n):
        raise NoSuchLatticeError(
            f"Rank {n} lattices without norm-1 vectors have N2 >= {extremal_n2(n)}"
        )
    defect = predict_shadow_defect(n, n2) if n >= 16 else None
    return RootCountStatus(n2 == extremal_n2(n), defect)


def low_rank_parity_holds(n: int, count: int) -> bool:
    """N'_(n-8) is even for every rank other than 8."""
    return n == 8 or count % 2 == 0
