"""Construction A: lattices L_C = {v / sqrt(2) : v mod 2 in C} from codes.

L_C is stored at scale 2 over integer coordinates. Its theta series is
W_C(theta_Z(2t), theta'_Z(2t)), and the characteristic vectors are the
vectors sqrt(2) v with v mod 2 in the shadow C', so the shadow theta series is
W'_C evaluated at the same pair.
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import Matrix

from shadowlab.conf import get_setting
from shadowlab.exceptions import CodeError, LatticeError, MismatchError
from shadowlab.lattice import (
    Lattice,
    enumerate_norms,
    hnf_rows,
    make_lattice,
    root_components,
    root_label,
    shadow_norm_counts,
    shortest_characteristic,
)
from shadowlab.modular import decompose, evaluate
from shadowlab.qseries import QSeries, theta_z, theta_z_shadow
from shadowlab.scode import (
    BinaryCode,
    WeightEnum,
    is_self_dual,
    shadow_enumerator,
    weight_enumerator,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftReport:
    """Outcome of comparing a code's enumerators with its lattice.

    ``agreement_bound`` is the quarter-exponent below which the series agree;
    ``enumerated_norm`` is the largest norm compared against brute force.
    """

    code: str
    rank: int
    agreement_bound: int
    enumerated_norm: int
    n2_relation: bool
    shadow_correspondence: bool | None = None
    multiplicity_exponent: int | None = None

    @property
    def passed(self) -> bool:
        return self.n2_relation and self.shadow_correspondence is not False


def construction_a(code: BinaryCode) -> Lattice:
    """Unimodular lattice of a self-dual code.

    Raises:
        CodeError: If the code is not self-dual.
        LatticeError: If the lifted lattice is not unimodular.
    """
    if not is_self_dual(code):
        raise CodeError(f"Construction A needs a self-dual code, got {code!r}")
    n = code.n
    rows = [[(g >> j) & 1 for j in range(n)] for g in code.gens]
    rows += [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    basis = hnf_rows(Matrix(rows)) if n else Matrix.zeros(0, 0)
    name = f"L({code.name})" if code.name else ""
    lattice = make_lattice(basis, scale=2, name=name)
    if lattice.det != 1:
        raise LatticeError(f"{lattice!r} has determinant {lattice.det}")
    return lattice


def _substitute(enum: WeightEnum, prec: int) -> QSeries:
    """sum_w A_w theta_Z(2t)^(n-w) theta'_Z(2t)^w to quarter-exponent prec."""
    half = (prec + 1) // 2
    base, odd = theta_z(half), theta_z_shadow(half)
    total = QSeries({}, half)
    for w, count in enumerate(enum.counts):
        if count:
            total = total + count * (base ** (enum.n - w)) * (odd**w)
    return total.scale_exponents(2).truncate(prec)


def theta_from_code(code: BinaryCode, prec: int) -> QSeries:
    return _substitute(weight_enumerator(code), prec)


def shadow_theta_from_code(code: BinaryCode, prec: int) -> QSeries:
    return _substitute(shadow_enumerator(code), prec)


def _first_difference(left: QSeries, right: QSeries) -> int | None:
    prec = min(left.prec, right.prec)
    return next(
        (e for e in range(prec) if left.coefficient(e) != right.coefficient(e)), None
    )


def verify_theta_identity(code: BinaryCode, prec: int) -> LiftReport:
    """Compare theta(L_C) with W_C(theta_Z(2t), theta'_Z(2t)) below ``prec``.

    Norms up to ``SHADOWLAB_ENUM_NORM`` are compared with brute-force
    enumeration; beyond that the enumerated leading counts fix the Hecke
    polynomial, whose evaluation must match the code side.

    Raises:
        MismatchError: At the first quarter-exponent where the sides differ.
    """
    lattice = construction_a(code)
    enum = weight_enumerator(code)
    predicted = _substitute(enum, prec)
    n = code.n
    norm_cap = max(n // 8, min(get_setting("SHADOWLAB_ENUM_NORM"), (prec - 1) // 4))
    counts = enumerate_norms(lattice, norm_cap)
    brute = QSeries.from_counts(counts.counts, 4, min(prec, 4 * norm_cap + 1))

    exponent = _first_difference(predicted, brute)
    if exponent is not None:
        raise MismatchError(
            f"theta(L_{code.name}) differs from W_C at quarter-exponent {exponent}",
            exponent,
            predicted.coefficient(exponent),
            brute.coefficient(exponent),
        )
    hecke = evaluate(decompose(n, [counts[k] for k in range(n // 8 + 1)]), prec)
    exponent = _first_difference(predicted, hecke)
    if exponent is not None:
        raise MismatchError(
            f"Hecke series of L_{code.name} differs from W_C at {exponent}",
            exponent,
            predicted.coefficient(exponent),
            hecke.coefficient(exponent),
        )
    n2_ok = norm_cap >= 2 and counts[2] == 2 * n + 16 * enum[4]
    logger.info(f"Theta identity holds for {code!r} below quarter-exponent {prec}")
    return LiftReport(code.name, n, prec, norm_cap, n2_ok)


def verify_shadow_identity(code: BinaryCode, bound: int | None = None) -> LiftReport:
    """Compare the characteristic vectors of L_C with the lifted shadow of C.

    The shortest characteristic norm must be twice the minimal shadow weight.
    The number of shortest characteristic vectors is divided by the number of
    minimal shadow words and the ratio must be a power of two. All shadow
    counts up to ``bound`` (default the minimal norm) must match the lifted
    shadow enumerator.

    Raises:
        MismatchError: If any of the comparisons fails.
    """
    lattice = construction_a(code)
    shadow = shadow_enumerator(code)
    weight = shadow.lowest()
    norm, count = shortest_characteristic(lattice)
    if weight is None or norm != 2 * weight:
        raise MismatchError(
            f"L_{code.name}: shortest characteristic norm {norm} is not twice the "
            f"minimal shadow weight {weight}",
            norm,
            None if weight is None else 2 * weight,
            norm,
        )
    ratio = Fraction(count) / shadow[weight]
    exponent = ratio.numerator.bit_length() - 1
    if ratio.denominator != 1 or ratio.numerator != 1 << exponent:
        raise MismatchError(
            f"L_{code.name}: {count} shortest characteristic vectors over "
            f"{shadow[weight]} shadow words is not a power of two",
            norm,
            shadow[weight],
            count,
        )

    limit = norm if bound is None else max(bound, norm)
    found = shadow_norm_counts(lattice, limit)
    lifted = _substitute(shadow, limit + 1)
    enumerated = QSeries.from_counts(found.counts, 1, limit + 1)
    first = _first_difference(lifted, enumerated)
    if first is not None:
        raise MismatchError(
            f"Shadow series of L_{code.name} differs from W'_C at norm {first}",
            first,
            lifted.coefficient(first),
            enumerated.coefficient(first),
        )

    enum = weight_enumerator(code)
    n2_ok = enumerate_norms(lattice, 2)[2] == 2 * code.n + 16 * enum[4]
    logger.info(
        f"Shadow identity holds for {code!r}: norm {norm}, multiplicity 2^{exponent}"
    )
    return LiftReport(code.name, code.n, limit + 1, limit, n2_ok, True, exponent)


def shadow_lift_multiplicity(code: BinaryCode) -> int:
    """Exponent k with N'_min(L_C) = 2^k * A'_min(C), measured by enumeration."""
    report = verify_shadow_identity(code)
    assert report.multiplicity_exponent is not None
    return report.multiplicity_exponent


def roots_from_construction_a(code: BinaryCode) -> str:
    return root_label(root_components(construction_a(code)))


def lift_root_types_ok(label: str) -> bool:
    """True iff every component is A1, D_2m, E7 or E8."""
    for letter, rank in re.findall(r"([ADE])(\d+)", label):
        rank = int(rank)
        if (letter, rank) in (("A", 1), ("E", 7), ("E", 8)):
            continue
        if letter == "D" and rank % 2 == 0:
            continue
        return False
    return True
