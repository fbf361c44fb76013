"""Binary self-dual codes, their shadows and weight enumerators.

Codewords are packed into Python ints (bit j is coordinate j) and swept as
numpy uint64 arrays, so lengths up to 64 are supported. Enumerators are
handled as sympy polynomials in x, y when a transform is applied.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

import galois
import numpy as np
from sympy import Poly, Rational, symbols

from shadowlab.conf import get_setting
from shadowlab.exceptions import (
    CodeError,
    DataFormatError,
    NoSuchCodeError,
    NotInSpanError,
    RankError,
)

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)

x, y = symbols("x y")

MAX_LENGTH = 64

# Generators swept into one in-memory block before the high bits are iterated.
CHUNK_BITS = 20

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)


def popcount64(words: np.ndarray) -> np.ndarray:
    """SWAR population count of a uint64 array."""
    words = words - ((words >> np.uint64(1)) & _M1)
    words = (words & _M2) + ((words >> np.uint64(2)) & _M2)
    words = (words + (words >> np.uint64(4))) & _M4
    return (words * _H01) >> np.uint64(56)


@dataclass(frozen=True)
class BinaryCode:
    """Linear code given by independent generator words packed as ints."""

    n: int
    gens: tuple[int, ...]
    name: str = field(default="", compare=False)

    @property
    def k(self) -> int:
        return len(self.gens)

    def matrix(self) -> np.ndarray:
        """Generator matrix as a k x n array of 0/1."""
        return np.array(
            [[(g >> j) & 1 for j in range(self.n)] for g in self.gens],
            dtype=np.int64,
        ).reshape(self.k, self.n)

    def __repr__(self) -> str:
        return f"BinaryCode({self.name or 'unnamed'}, n={self.n}, k={self.k})"


def word_from_bits(bits: Iterable[int]) -> int:
    return sum(1 << j for j, bit in enumerate(bits) if bit)


def word_to_string(word: int, n: int) -> str:
    return "".join(str((word >> j) & 1) for j in range(n))


def _rank(rows: Sequence[int], n: int) -> int:
    if not rows or n == 0:
        return 0
    matrix = GF2(
        np.array([[(r >> j) & 1 for j in range(n)] for r in rows], dtype=np.int64)
    )
    return int(np.linalg.matrix_rank(matrix))


def make_code(rows: Iterable, n: int, name: str = "") -> BinaryCode:
    """Build a code from generator rows (ints, bit strings or 0/1 sequences).

    Raises:
        CodeError: If the length is unsupported, a row is too long, or the rows
            are dependent.
    """
    if not 0 <= n <= MAX_LENGTH:
        raise CodeError(f"Code length must be between 0 and {MAX_LENGTH}, got {n}")
    gens = []
    for row in rows:
        if isinstance(row, str):
            row = word_from_bits(int(ch) for ch in row.strip())
        elif not isinstance(row, int):
            row = word_from_bits(row)
        if row >> n:
            raise CodeError(f"Generator {row:b} does not fit in length {n}")
        gens.append(row)
    if _rank(gens, n) != len(gens):
        raise CodeError(f"Generators of {name or 'code'} are linearly dependent")
    return BinaryCode(n, tuple(gens), name)


def is_self_dual(code: BinaryCode) -> bool:
    """True iff k = n/2 and every pair of generators meets evenly."""
    if code.n % 2 or 2 * code.k != code.n:
        return False
    gens = code.gens
    return all(
        (gens[i] & gens[j]).bit_count() % 2 == 0
        for i in range(len(gens))
        for j in range(i, len(gens))
    )


def _require_self_dual(code: BinaryCode):
    if not is_self_dual(code):
        raise CodeError(f"{code!r} is not self-dual")


def _sweep_weights(code: BinaryCode, offset: int = 0) -> np.ndarray:
    """Weight distribution of ``offset + C`` by exhausting all 2^k words."""
    limit = get_setting("SHADOWLAB_MAX_CODE_DIM")
    if code.k > limit:
        raise CodeError(
            f"{code!r} has dimension {code.k} > {limit}, too large to sweep"
        )
    low, high = code.gens[:CHUNK_BITS], code.gens[CHUNK_BITS:]
    block = np.array([offset], dtype=np.uint64)
    for g in low:
        block = np.concatenate([block, block ^ np.uint64(g)])
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for index in range(1 << len(high)):
        shift = 0
        for bit, g in enumerate(high):
            if index >> bit & 1:
                shift ^= g
        words = block ^ np.uint64(shift) if shift else block
        weights = popcount64(words).astype(np.int64)
        counts += np.bincount(weights, minlength=code.n + 1)
    return counts


def codewords(code: BinaryCode) -> list[int]:
    """All 2^k codewords in plain-counter order (small codes only)."""
    words = [0]
    for g in code.gens:
        words += [w ^ g for w in words]
    return words


@dataclass(frozen=True)
class WeightEnum:
    """Homogeneous enumerator sum_w A_w x^(n-w) y^w stored as counts A_0..A_n."""

    n: int
    counts: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise CodeError(f"Enumerator of degree {self.n} needs {self.n + 1} counts")
        object.__setattr__(self, "counts", tuple(Fraction(c) for c in self.counts))

    def __getitem__(self, weight: int) -> Fraction:
        return self.counts[weight] if 0 <= weight <= self.n else Fraction(0)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.counts)

    def lowest(self, start: int = 0) -> int | None:
        """Smallest weight >= start with a non-zero count."""
        return next((w for w in range(start, self.n + 1) if self.counts[w]), None)

    def support(self) -> dict[int, Fraction]:
        return {w: c for w, c in enumerate(self.counts) if c}

    def as_poly(self) -> Poly:
        expr = sum(
            (
                Rational(c.numerator, c.denominator) * x ** (self.n - w) * y**w
                for w, c in enumerate(self.counts)
            ),
            Rational(0),
        )
        return Poly(expr, x, y)

    @classmethod
    def from_poly(cls, poly: Poly, n: int) -> "WeightEnum":
        counts = []
        for w in range(n + 1):
            value = Rational(poly.coeff_monomial(x ** (n - w) * y**w))
            counts.append(Fraction(int(value.p), int(value.q)))
        return cls(n, tuple(counts))

    def __str__(self) -> str:
        terms = []
        for w, c in self.support().items():
            factors = [] if c == 1 else [str(c)]
            for var, power in (("x", self.n - w), ("y", w)):
                if power:
                    factors.append(var if power == 1 else f"{var}^{power}")
            terms.append("*".join(factors) or "1")
        return " + ".join(terms) or "0"


def weight_enumerator(code: BinaryCode) -> WeightEnum:
    counts = _sweep_weights(code)
    return WeightEnum(code.n, tuple(int(c) for c in counts))


def minimum_weight(code: BinaryCode) -> int | None:
    return weight_enumerator(code).lowest(1)


def shadow_rep(code: BinaryCode) -> int:
    """A word s with (g, s) = wt(g)/2 mod 2 for every generator g.

    Raises:
        CodeError: If the linear system is inconsistent or a generator has odd
            weight, both signs of a code that is not self-dual.
    """
    n = code.n
    if code.k == 0:
        return 0
    if any(g.bit_count() % 2 for g in code.gens):
        raise CodeError(f"{code!r} has a generator of odd weight")
    targets = np.array([(g.bit_count() // 2) % 2 for g in code.gens], dtype=np.int64)
    augmented = GF2(np.hstack([code.matrix(), targets[:, None]]))
    solution = 0
    for row in augmented.row_reduce():
        pivots = np.nonzero(row[:n])[0]
        if len(pivots) == 0:
            if int(row[n]):
                raise CodeError(f"Shadow system of {code!r} is inconsistent")
            continue
        if int(row[n]):
            solution |= 1 << int(pivots[0])
    return solution


def shadow_enumerator(code: BinaryCode) -> WeightEnum:
    """Weight distribution of the shadow coset C + s."""
    _require_self_dual(code)
    counts = _sweep_weights(code, shadow_rep(code))
    return WeightEnum(code.n, tuple(int(c) for c in counts))


def shadow_min_weight(code: BinaryCode) -> int | None:
    return shadow_enumerator(code).lowest()


def _transform(enum: WeightEnum, signed: bool) -> WeightEnum:
    n = enum.n
    if n % 2:
        raise CodeError(f"Transforms need an even length, got {n}")
    total = Poly(0, x, y)
    plus, minus = Poly(x + y, x, y), Poly(x - y, x, y)
    for w, count in enumerate(enum.counts):
        if not count:
            continue
        sign = -1 if signed and (w // 2) % 2 else 1
        coefficient = sign * Rational(count.numerator, count.denominator)
        total += plus ** (n - w) * minus**w * coefficient
    return WeightEnum.from_poly(total * Rational(1, 2 ** (n // 2)), n)


def macwilliams(enum: WeightEnum, strict: bool = False) -> WeightEnum:
    """2^(-n/2) W(x+y, x-y).

    Raises:
        NotInSpanError: With ``strict``, if the image is not integral.
    """
    image = _transform(enum, signed=False)
    if strict and not image.is_integral:
        raise NotInSpanError(
            "MacWilliams image is not integral; not a self-dual enumerator"
        )
    return image


def shadow_transform(enum: WeightEnum) -> WeightEnum:
    """2^(-n/2) sum_w (-1)^(w/2) A_w (x+y)^(n-w) (x-y)^w.

    Raises:
        CodeError: If an odd weight has a non-zero count.
    """
    if any(enum.counts[w] for w in range(1, enum.n + 1, 2)):
        raise CodeError("Shadow transform needs an enumerator with even weights only")
    return _transform(enum, signed=True)


# Gleason basis

G2 = Poly(x**2 + y**2, x, y)
G8 = Poly(x**8 + 14 * x**4 * y**4 + y**8, x, y)
DELTA = G2**4 - G8
SHADOW_G2 = Poly(2 * x * y, x, y)
SHADOW_DELTA = Poly(-((x**4 - y**4) ** 2), x, y)


@dataclass(frozen=True)
class GleasonPoly:
    """Coefficients b_j of sum_j b_j g2^((n-8j)/2) delta^j, delta = g2^4 - g8."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 0 or self.n % 2:
            raise RankError(f"Gleason polynomials need an even length, got {self.n}")
        if len(self.coeffs) != self.n // 8 + 1:
            raise CodeError(
                f"Length {self.n} needs {self.n // 8 + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def evaluate(self) -> WeightEnum:
        return WeightEnum.from_poly(_combine(self, G2, DELTA), self.n)


def _basis(n: int, j: int, g2: Poly, delta: Poly) -> Poly:
    return g2 ** ((n - 8 * j) // 2) * delta**j


def _combine(p: GleasonPoly, g2: Poly, delta: Poly) -> Poly:
    total = Poly(0, x, y)
    for j, b in enumerate(p.coeffs):
        if b:
            total += _basis(p.n, j, g2, delta) * Rational(b.numerator, b.denominator)
    return total


def _coefficient(poly: Poly, n: int, w: int) -> Fraction:
    value = Rational(poly.coeff_monomial(x ** (n - w) * y**w))
    return Fraction(int(value.p), int(value.q))


def gleason_solve(n: int, leading) -> GleasonPoly:
    """Coefficients in the delta-basis from A_0, A_2, ..., A_(2 floor(n/8)).

    The solve is triangular with pivots 4^j on y^(2j).

    Raises:
        RankError: If the length is odd.
        CodeError: If ``leading`` has the wrong length.
    """
    if n < 0 or n % 2:
        raise RankError(f"Gleason decomposition needs an even length, got {n}")
    leading = [Fraction(value) for value in leading]
    size = n // 8 + 1
    if len(leading) != size:
        raise CodeError(f"Length {n} needs {size} leading counts, got {len(leading)}")
    basis = [_basis(n, j, G2, DELTA) for j in range(size)]
    coeffs: list[Fraction] = []
    for k in range(size):
        known = sum(
            (coeffs[j] * _coefficient(basis[j], n, 2 * k) for j in range(k)),
            Fraction(0),
        )
        coeffs.append((leading[k] - known) / _coefficient(basis[k], n, 2 * k))
    return GleasonPoly(n, tuple(coeffs))


def gleason_decompose(enum: WeightEnum) -> GleasonPoly:
    """Coefficients of a full enumerator in the delta-basis.

    Raises:
        RankError: If the length is odd.
        NotInSpanError: If the enumerator is not in the span of the basis.
    """
    n = enum.n
    result = gleason_solve(n, [enum[2 * k] for k in range(n // 8 + 1)])
    if result.evaluate() != enum:
        raise NotInSpanError(f"Enumerator of length {n} is not a Gleason polynomial")
    return result


def shadow_from_gleason(p: GleasonPoly) -> WeightEnum:
    """Shadow enumerator: g2 -> 2xy and delta -> -(x^4 - y^4)^2."""
    return WeightEnum.from_poly(_combine(p, SHADOW_G2, SHADOW_DELTA), p.n)


def enumerator_from_shadow(shadow: WeightEnum) -> GleasonPoly:
    """Invert ``shadow_from_gleason``.

    The j-th shadow basis element has lowest y-degree n/2 - 4j, so the solve
    runs from the largest j down.

    Raises:
        NotInSpanError: If ``shadow`` is not a shadow enumerator.
    """
    n = shadow.n
    if n % 2:
        raise RankError(f"Shadow enumerators need an even length, got {n}")
    size = n // 8 + 1
    basis = [_basis(n, j, SHADOW_G2, SHADOW_DELTA) for j in range(size)]
    coeffs = [Fraction(0)] * size
    for j in reversed(range(size)):
        degree = n // 2 - 4 * j
        known = sum(
            (coeffs[i] * _coefficient(basis[i], n, degree) for i in range(j + 1, size)),
            Fraction(0),
        )
        coeffs[j] = (shadow[degree] - known) / _coefficient(basis[j], n, degree)
    result = GleasonPoly(n, tuple(coeffs))
    if shadow_from_gleason(result) != shadow:
        raise NotInSpanError(f"Length-{n} enumerator is not a shadow enumerator")
    return result


def extremal_a4(n: int) -> Fraction:
    return Fraction(n * (22 - n), 8)


def extremal_shadow_words(n: int) -> Fraction:
    """Number of shadow words of weight (n-8)/2 of an extremal code."""
    return Fraction(2) ** ((n - 14) // 2) * n if n % 2 == 0 else Fraction(0)


def extremal_enumerator(n: int) -> GleasonPoly:
    """Enumerator of a length-n code with no weight-2 words and A_4 minimal.

    Raises:
        RankError: If n is odd or outside 8..22.
    """
    if n % 2 or not 8 <= n <= 22:
        raise RankError(f"Extremal enumerators exist for even lengths 8..22, got {n}")
    coeffs = [Fraction(1), Fraction(-n, 8)] + [Fraction(0)] * (n // 8 - 1)
    return GleasonPoly(n, tuple(coeffs))


def predict_code_defect(n: int, a4: int) -> Fraction:
    """Shadow words of weight (n-16)/2 forced by A_4.

    Returns:
        Fraction: 2^((n-24)/2) * d with d = A_4 - n(22-n)/8.

    Raises:
        RankError: If n is odd or outside 16..22.
        NoSuchCodeError: If d is negative or not a multiple of 2^((24-n)/2).
    """
    if n % 2 or not 16 <= n < 24:
        raise RankError(f"Code defect is defined for even lengths 16..22, got {n}")
    d = a4 - extremal_a4(n)
    if d < 0:
        raise NoSuchCodeError(
            f"No self-dual code of length {n} has A4={a4} < {extremal_a4(n)}"
        )
    step = 2 ** ((24 - n) // 2)
    if d.denominator != 1 or d.numerator % step:
        raise NoSuchCodeError(
            f"Length {n}: A4 excess {d} is not a multiple of {step}, no such code"
        )
    return d / step


@dataclass(frozen=True)
class WeightFourStatus:
    extremal: bool
    shadow_defect: Fraction | None


def classify_a4(n: int, a4: int) -> WeightFourStatus:
    """Place A_4 of a code without weight-2 words against the lower bound."""
    if n % 2 or not 8 <= n <= 22:
        raise RankError(f"The A4 bound applies to even lengths 8..22, got {n}")
    if a4 < extremal_a4(n):
        raise NoSuchCodeError(
            f"Length {n} codes without weight-2 words have A4 >= {extremal_a4(n)}"
        )
    defect = predict_code_defect(n, a4) if n >= 16 else None
    return WeightFourStatus(a4 == extremal_a4(n), defect)


# Building codes


def code_direct_sum(first: BinaryCode, second: BinaryCode) -> BinaryCode:
    gens = first.gens + tuple(g << first.n for g in second.gens)
    name = "+".join(part for part in (first.name, second.name) if part)
    return BinaryCode(first.n + second.n, gens, name)


def repetition_code() -> BinaryCode:
    """The code z = {00, 11}."""
    return BinaryCode(2, (0b11,), "z")


def _independent_rows(rows: np.ndarray) -> list[int]:
    if rows.size == 0:
        return []
    reduced = GF2(rows % 2).row_reduce()
    return [
        word_from_bits(int(v) for v in row) for row in reduced if np.count_nonzero(row)
    ]


def split_z(code: BinaryCode) -> tuple[int, BinaryCode]:
    """Write C = z^r + C0 with r the number of weight-2 codewords.

    In a self-dual code e_i + e_j is a codeword exactly when columns i and j of
    the generator matrix agree, and such pairs are disjoint.
    """
    _require_self_dual(code)
    matrix = code.matrix()
    columns: dict[tuple[int, ...], list[int]] = {}
    for j in range(code.n):
        columns.setdefault(tuple(matrix[:, j]), []).append(j)
    pairs = [group for group in columns.values() if len(group) == 2]
    used = {j for group in pairs for j in group}
    keep = [j for j in range(code.n) if j not in used]
    rows = matrix[:, keep] if keep else np.zeros((0, 0), dtype=np.int64)
    rest = BinaryCode(len(keep), tuple(_independent_rows(rows)), code.name)
    logger.info(f"Split z^{len(pairs)} off {code!r}")
    return len(pairs), rest


def golay24() -> BinaryCode:
    """Extended Golay code: cyclic [23, 12] code plus an overall parity bit."""
    generator = word_from_bits(
        1 if j in (0, 2, 4, 5, 6, 10, 11) else 0 for j in range(23)
    )
    gens = []
    for shift in range(12):
        word = generator << shift
        gens.append(word | ((word.bit_count() % 2) << 23))
    return make_code(gens, 24, "g24")


def shorter_golay() -> BinaryCode:
    """Words of the extended Golay code equal on coordinates 22 and 23, with
    those two coordinates deleted: the [22, 11, 6] self-dual code.
    """
    both = (1 << 22) | (1 << 23)
    gens = list(golay24().gens)
    pivot = next(g for g in gens if ((g >> 22) ^ (g >> 23)) & 1)
    kept = []
    for g in gens:
        if g == pivot:
            continue
        if ((g >> 22) ^ (g >> 23)) & 1:
            g ^= pivot
        kept.append(g & ~both)
    return make_code(kept, 22, "g22")


# Generator files


def read_generator_file(path, name: str = "") -> BinaryCode:
    """Read ``n k`` followed by k rows of n characters from {0, 1}.

    Raises:
        DataFormatError: If the header or a row is malformed.
    """
    with open(path, encoding="utf-8") as handle:
        lines = [
            line.strip()
            for line in handle
            if line.strip() and not line.lstrip().startswith("#")
        ]
    try:
        n, k = (int(token) for token in lines[0].split())
    except (IndexError, ValueError) as exc:
        raise DataFormatError(f"{path}: first line must be 'n k'") from exc
    rows = lines[1:]
    if len(rows) != k or any(len(r) != n or set(r) - {"0", "1"} for r in rows):
        raise DataFormatError(f"{path}: expected {k} rows of {n} binary digits")
    return make_code(rows, n, name)


def write_generator_file(code: BinaryCode, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{code.n} {code.k}\n")
        for g in code.gens:
            handle.write(word_to_string(g, code.n) + "\n")
