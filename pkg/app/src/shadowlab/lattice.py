"""Integral lattices given by exact rational bases.

A ``Lattice`` stores basis rows in an ambient rational space together with an
integer ``scale``; inner products are ordinary dot products divided by the
scale. Construction A and the Leech lattice live at scales 2 and 8, which keeps
every stored number rational.

Norm and shadow counts come from a Fincke-Pohst walk over an LLL-reduced basis.
Floating point is used only to prune the walk; every norm is accumulated in
exact integer arithmetic.
"""

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain

import galois
import numpy as np
from sympy import ImmutableMatrix, Matrix, Rational, ilcm, nsimplify, zeros
from sympy.matrices.normalforms import hermite_normal_form
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.diophantine.diophantine import sum_of_four_squares

from shadowlab.exceptions import DataFormatError, LatticeError

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)

# Relative slack on enumeration radii; exact norms decide membership.
RADIUS_MARGIN = 1e-6


@dataclass(frozen=True, eq=False)
class Lattice:
    """Lattice spanned by the rows of ``basis`` with inner product dot / scale."""

    basis: ImmutableMatrix
    scale: int = 1
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.basis.rows

    @property
    def dim(self) -> int:
        return self.basis.cols

    @cached_property
    def gram(self) -> ImmutableMatrix:
        return ImmutableMatrix(self.basis * self.basis.T / self.scale)

    @cached_property
    def gram_rows(self) -> list[list[int]]:
        """Gram matrix as nested Python ints; only valid for integral lattices."""
        return [[int(self.gram[i, j]) for j in range(self.n)] for i in range(self.n)]

    @cached_property
    def det(self) -> Rational:
        return Rational(self.gram.det()) if self.n else Rational(1)

    @property
    def is_integral(self) -> bool:
        return all(entry.is_integer for entry in self.gram)

    @property
    def is_unimodular(self) -> bool:
        return self.is_integral and self.det == 1

    @property
    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.n))

    @cached_property
    def reduced(self) -> "Lattice":
        """The same lattice on an LLL-reduced basis."""
        return lll(self)

    @cached_property
    def reduced_to_own(self) -> list[list[int]]:
        """Integer matrix U with reduced.basis == U * basis."""
        if self.n == 0:
            return []
        gram_ambient = self.basis * self.basis.T
        change = self.reduced.basis * self.basis.T * gram_ambient.inv()
        return [[int(change[i, j]) for j in range(self.n)] for i in range(self.n)]

    def __repr__(self) -> str:
        label = self.name or "unnamed"
        return f"Lattice({label}, rank={self.n}, scale={self.scale})"


@dataclass(frozen=True)
class CharCoset:
    """Characteristic vectors ``rep + 2L`` in basis coordinates."""

    rep: tuple[int, ...]

    def contains(self, coords: Sequence[int]) -> bool:
        return len(coords) == len(self.rep) and all(
            (c - r) % 2 == 0 for c, r in zip(coords, self.rep)
        )


@dataclass(frozen=True)
class NormCounts:
    """Vector counts per norm up to ``bound``; missing norms count zero."""

    counts: Mapping[int, int]
    bound: int

    def __getitem__(self, norm: int) -> int:
        if norm > self.bound:
            raise LatticeError(
                f"Norm {norm} exceeds the enumeration bound {self.bound}"
            )
        return self.counts.get(norm, 0)

    def minimum(self) -> int | None:
        """Smallest norm with a non-zero count, ignoring the zero vector."""
        return next((k for k in sorted(self.counts) if k > 0), None)

    def lowest(self) -> int | None:
        return min(self.counts, default=None)

    def as_dict(self) -> dict[int, int]:
        return dict(sorted(self.counts.items()))


def _denominator(entries: Iterable) -> int:
    d = 1
    for entry in entries:
        d = ilcm(d, Rational(entry).q)
    return int(d)


def make_lattice(
    basis, scale: int = 1, integral: bool = True, name: str = ""
) -> Lattice:
    """Validate a basis and wrap it as a ``Lattice``.

    Args:
        basis: Rows of basis vectors, a sympy matrix or nested sequences of
            rationals.
        scale: Divisor applied to every ambient dot product.
        integral: Reject the lattice if its Gram matrix is not integral.
        name: Label used in logs and reports.

    Raises:
        LatticeError: If the rows are dependent or the Gram matrix is not
            integral when integrality is requested.
    """
    matrix = ImmutableMatrix(basis).applyfunc(nsimplify)
    if scale < 1:
        raise LatticeError(f"Scale must be a positive integer, got {scale}")
    if matrix.rows and matrix.rank() != matrix.rows:
        raise LatticeError(f"Basis of {name or 'lattice'} is singular")
    lattice = Lattice(matrix, scale, name)
    if integral and not lattice.is_integral:
        raise LatticeError(f"Gram matrix of {name or 'lattice'} is not integral")
    return lattice


def empty_lattice(dim: int = 0, scale: int = 1) -> Lattice:
    return Lattice(ImmutableMatrix(zeros(0, dim)), scale, "O")


def integer_lattice(n: int) -> Lattice:
    if n < 0:
        raise LatticeError(f"Rank must be non-negative, got {n}")
    if n == 0:
        return empty_lattice()
    return Lattice(ImmutableMatrix.eye(n), 1, f"Z{n}")


def lattice_from_gram(gram) -> Lattice:
    """Realize a rational positive definite Gram matrix with a rational basis.

    Writes G = L D L^T and replaces each sqrt(d_i) by an integer vector of
    squared length d_i * s (four squares), where s clears the denominators.
    """
    g = Matrix(gram).applyfunc(nsimplify)
    if not g.is_square or g != g.T:
        raise LatticeError("Gram matrix must be square and symmetric")
    if not g.is_positive_definite:
        raise LatticeError("Gram matrix must be positive definite")
    lower, diagonal = g.LDLdecomposition()
    n = g.rows
    scale = _denominator(diagonal[i, i] for i in range(n))
    blocks = []
    for i in range(n):
        squares = [a for a in sum_of_four_squares(int(diagonal[i, i] * scale)) if a]
        blocks.append(squares)
    width = sum(len(b) for b in blocks)
    root = zeros(n, width)
    column = 0
    for i, squares in enumerate(blocks):
        for a in squares:
            root[i, column] = a
            column += 1
    return make_lattice(lower * root, scale)


def lll(lat: Lattice) -> Lattice:
    """LLL-reduce the basis rows; the lattice itself is unchanged."""
    if lat.n <= 1:
        return lat
    d = _denominator(lat.basis)
    integer_rows = DomainMatrix.from_Matrix(Matrix(lat.basis * d))
    reduced = integer_rows.lll().to_Matrix() / d
    logger.debug(f"LLL-reduced basis of {lat!r}")
    return Lattice(ImmutableMatrix(reduced), lat.scale, lat.name)


def hnf_rows(generators: Matrix) -> Matrix:
    """Basis rows of the Z-span of integer generator rows, in Hermite normal form."""
    gens = Matrix(generators)
    if gens.rows < gens.cols:
        gens = gens.col_join(zeros(gens.cols - gens.rows, gens.cols))
    columns = hermite_normal_form(gens.T)
    rows = [columns[:, j].T for j in range(columns.cols) if any(columns[:, j])]
    return Matrix.vstack(*rows) if rows else zeros(0, gens.cols)


def span_basis(generators: Matrix) -> Matrix:
    """Basis rows of the Z-span of rational generator rows."""
    d = _denominator(generators)
    return hnf_rows(Matrix(generators) * d) / d


# Enumeration core


class _Walker:
    """Fincke-Pohst walk over integer coordinates of a fixed Gram matrix.

    Only vectors whose highest non-zero coordinate is positive are visited;
    their negatives are counted alongside.
    """

    def __init__(self, gram: list[list[int]]):
        self.gram = gram
        self.n = n = len(gram)
        if n:
            chol = np.linalg.cholesky(np.array(gram, dtype=float))
            self.q = [float(chol[i, i]) ** 2 for i in range(n)]
            self.mu = [
                [float(chol[j, i] / chol[i, i]) for j in range(i + 1, n)]
                for i in range(n)
            ]
            self.upper = [gram[i][i + 1 :] for i in range(n)]

    def run(self, bound: int, parity: Sequence[int] | None = None, collect=None):
        """Count vectors with norm <= bound and coordinates = parity mod 2.

        Args:
            bound: Largest norm counted.
            parity: Coordinate residues mod 2; zero means the lattice itself.
            collect: If set, also return one vector per +- pair of this norm.

        Returns:
            tuple: (counts per norm, collected coordinate tuples).
        """
        counts: dict[int, int] = defaultdict(int)
        found: list[tuple[int, ...]] = []
        n = self.n
        step = 1 if parity is None else 2
        residues = [p % 2 for p in parity] if parity is not None else None
        if n == 0:
            if bound >= 0:
                counts[0] = 1
            return counts, found

        x = [0] * n
        q, mu, upper, gram = self.q, self.mu, self.upper, self.gram

        def walk(i, budget, exact, top):
            tail = x[i + 1 :]
            center = -sum(m * v for m, v in zip(mu[i], tail))
            cross = sum(g * v for g, v in zip(upper[i], tail))
            reach = math.sqrt(max(budget, 0.0) / q[i])
            lo = math.ceil(center - reach)
            hi = math.floor(center + reach)
            if top:
                lo = max(lo, 0)
            if residues is not None and (lo - residues[i]) % 2:
                lo += 1
            gii = gram[i][i]
            for v in range(lo, hi + 1, step):
                offset = v - center
                rest = budget - q[i] * offset * offset
                if rest < 0:
                    continue
                x[i] = v
                norm = exact + gii * v * v + 2 * v * cross
                if i:
                    walk(i - 1, rest, norm, top and v == 0)
                elif norm <= bound:
                    counts[norm] += 1 if norm == 0 else 2
                    if collect is not None and norm == collect and norm:
                        found.append(tuple(x))
            x[i] = 0

        walk(n - 1, bound * (1 + RADIUS_MARGIN) + 1e-9, 0, True)
        return counts, found


def _walker(lat: Lattice) -> _Walker:
    if not lat.is_integral:
        raise LatticeError(f"{lat!r} is not integral")
    return _Walker(lat.reduced.gram_rows)


def enumerate_norms(lat: Lattice, max_norm: int) -> NormCounts:
    """Exact number of lattice vectors of each norm 0..max_norm."""
    counts, _ = _walker(lat).run(max_norm)
    logger.info(f"Enumerated {lat!r} to norm {max_norm}: {counts}")
    return NormCounts(dict(sorted(counts.items())), max_norm)


def short_vectors(lat: Lattice, norm: int) -> list[tuple[int, ...]]:
    """Vectors of exactly ``norm`` in basis coordinates, one per +- pair."""
    _, found = _walker(lat).run(norm, collect=norm)
    change = lat.reduced_to_own
    return [
        tuple(sum(c * change[k][j] for k, c in enumerate(v)) for j in range(lat.n))
        for v in found
    ]


def characteristic_coset(lat: Lattice) -> CharCoset:
    """Solve G x = diag(G) over GF(2) for a characteristic representative.

    Raises:
        LatticeError: If the Gram matrix is singular mod 2 (even determinant).
    """
    n = lat.n
    if n == 0:
        return CharCoset(())
    rows = lat.gram_rows
    a = GF2(np.array(rows, dtype=np.int64) % 2)
    b = GF2(np.array([rows[i][i] % 2 for i in range(n)], dtype=np.int64))
    if np.linalg.matrix_rank(a) < n:
        raise LatticeError(f"{lat!r} has even determinant, no characteristic coset")
    x = np.linalg.solve(a, b)
    return CharCoset(tuple(int(v) for v in x))


def shadow_norm_counts(lat: Lattice, max_cnorm: int) -> NormCounts:
    """Number of characteristic vectors of each norm up to ``max_cnorm``."""
    reduced = lat.reduced
    coset = characteristic_coset(reduced)
    counts, _ = _walker(lat).run(max_cnorm, parity=coset.rep)
    logger.info(
        f"Enumerated characteristic vectors of {lat!r} to norm {max_cnorm}: "
        f"{dict(sorted(counts.items()))}"
    )
    return NormCounts(dict(sorted(counts.items())), max_cnorm)


def shortest_characteristic(lat: Lattice) -> tuple[int, int]:
    """Norm and number of the shortest characteristic vectors.

    Characteristic norms are congruent to n mod 8, so only radii n mod 8,
    n mod 8 + 8, ... up to n are searched.
    """
    walker = _walker(lat)
    parity = characteristic_coset(lat.reduced).rep
    radius = lat.n % 8
    while radius <= lat.n:
        counts, _ = walker.run(radius, parity=parity)
        if counts:
            lowest = min(counts)
            return lowest, counts[lowest]
        radius += 8
    raise LatticeError(f"No characteristic vector of norm <= {lat.n} in {lat!r}")


def min_characteristic_norm(lat: Lattice) -> int:
    return shortest_characteristic(lat)[0]


def _rescale(basis: Matrix, factor: int) -> Matrix:
    """Multiply every squared length by ``factor`` by splitting coordinates."""
    if factor == 1:
        return Matrix(basis)
    squares = [a for a in sum_of_four_squares(factor) if a]
    columns = [basis[:, j] * a for j in range(basis.cols) for a in squares]
    return Matrix.hstack(*columns) if columns else zeros(basis.rows, 0)


def direct_sum(first: Lattice, second: Lattice) -> Lattice:
    """Orthogonal sum on disjoint ambient coordinates, scales aligned."""
    scale = int(ilcm(first.scale, second.scale))
    left = _rescale(first.basis, scale // first.scale)
    right = _rescale(second.basis, scale // second.scale)
    basis = Matrix.vstack(
        left.row_join(zeros(left.rows, right.cols)),
        zeros(right.rows, left.cols).row_join(right),
    )
    name = "+".join(part for part in (first.name, second.name) if part)
    return Lattice(ImmutableMatrix(basis), scale, name)


def reduce(lat: Lattice) -> tuple[int, Lattice]:
    """Split off the norm-1 vectors: L = Z^r + L0 with L0 free of norm 1.

    Returns:
        tuple: r and L0 on a basis of integer combinations of ``lat.basis``.
    """
    units = short_vectors(lat, 1)
    if not units:
        return 0, lat
    rows = lat.gram_rows
    n = lat.n
    projected = []
    for i in range(n):
        coords = [int(i == j) for j in range(n)]
        for u in units:
            weight = sum(rows[i][k] * u[k] for k in range(n))
            coords = [c - weight * uk for c, uk in zip(coords, u)]
        projected.append(coords)
    complement = hnf_rows(Matrix(projected))
    if complement.rows != n - len(units):
        raise LatticeError(
            f"Complement of the norm-1 vectors of {lat!r} has wrong rank"
        )
    logger.info(f"Split Z^{len(units)} off {lat!r}")
    if complement.rows == 0:
        return len(units), empty_lattice(lat.dim, lat.scale)
    return len(units), make_lattice(complement * lat.basis, lat.scale, lat.name)


# Root lattices and glue


def _parse_kind(kind: str) -> tuple[str, int]:
    text = kind.replace("_", "").strip()
    if len(text) < 2 or text[0] not in "ADE" or not text[1:].isdigit():
        raise LatticeError(f"Unknown root lattice kind {kind!r}")
    letter, m = text[0], int(text[1:])
    valid = (
        (letter == "A" and m >= 1)
        or (letter == "D" and m >= 3)
        or (letter == "E" and m in (6, 7, 8))
    )
    if not valid:
        raise LatticeError(f"Unknown root lattice kind {kind!r}")
    return letter, m


def _e8_simple_roots() -> list[list[Rational]]:
    half = Rational(1, 2)
    roots = [[half, -half, -half, -half, -half, -half, -half, half]]
    roots.append([1, 1, 0, 0, 0, 0, 0, 0])
    for i in range(6):
        root = [0] * 8
        root[i] = -1
        root[i + 1] = 1
        roots.append(root)
    return roots


def simple_roots(kind: str) -> list[list]:
    """Simple roots in Bourbaki coordinates."""
    letter, m = _parse_kind(kind)
    if letter == "A":
        roots = []
        for i in range(m):
            root = [0] * (m + 1)
            root[i], root[i + 1] = 1, -1
            roots.append(root)
        return roots
    if letter == "D":
        roots = []
        for i in range(m - 1):
            root = [0] * m
            root[i], root[i + 1] = 1, -1
            roots.append(root)
        last = [0] * m
        last[m - 2] = last[m - 1] = 1
        roots.append(last)
        return roots
    return _e8_simple_roots()[:m]


def root_lattice(kind: str) -> Lattice:
    """Root lattice A_m, D_m, E_6, E_7 or E_8 spanned by its simple roots."""
    letter, m = _parse_kind(kind)
    return make_lattice(simple_roots(kind), name=f"{letter}{m}")


def glue_group_size(kind: str) -> int:
    letter, m = _parse_kind(kind)
    return {"A": m + 1, "D": 4, "E": 9 - m}[letter]


def fundamental_weight(kind: str, cls: int) -> list[Rational]:
    """Glue class representative in simple-root coordinates.

    Classes follow the usual labels: [k] = omega_k for A_m; for D_m
    [1] = omega_m, [2] = omega_1, [3] = omega_(m-1); E6 [1] = omega_1,
    [2] = omega_6; E7 [1] = omega_7.
    """
    letter, m = _parse_kind(kind)
    if not 0 <= cls < glue_group_size(kind):
        raise LatticeError(f"{kind} has no glue class [{cls}]")
    if cls == 0:
        return [Rational(0)] * m
    if letter == "A":
        index = cls
    elif letter == "D":
        index = {1: m, 2: 1, 3: m - 1}[cls]
    elif m == 6:
        index = {1: 1, 2: 6}[cls]
    else:
        index = 7
    cartan = root_lattice(kind).gram
    weights = cartan.inv()
    return [Rational(weights[index - 1, j]) for j in range(m)]


def components_sum(kinds: Sequence[str]) -> Lattice:
    lattice = empty_lattice()
    for kind in kinds:
        lattice = direct_sum(lattice, root_lattice(kind))
    return Lattice(lattice.basis, lattice.scale, "".join(kinds))


def glue_vector(kinds: Sequence[str], classes: Sequence[int]) -> list[Rational]:
    """Concatenate one glue class representative per component."""
    if len(kinds) != len(classes):
        raise LatticeError(
            f"Glue {list(classes)} does not match components {list(kinds)}"
        )
    return list(
        chain.from_iterable(fundamental_weight(k, c) for k, c in zip(kinds, classes))
    )


def glue(lat: Lattice, glue_vectors: Sequence[Sequence]) -> Lattice:
    """Overlattice spanned by ``lat`` and rational combinations of its basis.

    Raises:
        LatticeError: If a vector has the wrong length or the result is not
            integral.
    """
    if not glue_vectors:
        return lat
    n = lat.n
    extra = Matrix([[nsimplify(c) for c in vector] for vector in glue_vectors])
    if extra.cols != n:
        raise LatticeError(f"Glue vectors for {lat!r} must have {n} coordinates")
    coords = span_basis(Matrix.eye(n).col_join(extra))
    if coords.rows != n:
        raise LatticeError(f"Gluing {lat!r} lost rank")
    glued = make_lattice(coords * lat.basis, lat.scale, lat.name)
    logger.debug(f"Glued {len(glue_vectors)} vectors onto {lat!r}, det {glued.det}")
    return glued


# Root systems


def _component_type(rank: int, count: int) -> tuple[str, int]:
    if count == rank * (rank + 1):
        return "A", rank
    if rank >= 4 and count == 2 * rank * (rank - 1):
        return "D", rank
    if (rank, count) in ((6, 72), (7, 126), (8, 240)):
        return "E", rank
    raise LatticeError(f"No root system of rank {rank} has {count} roots")


def root_components(lat: Lattice) -> list[tuple[str, int]]:
    """Irreducible components of the norm-2 vectors, as (letter, rank) pairs."""
    roots = short_vectors(lat, 2)
    if not roots:
        return []
    r = np.array(roots, dtype=np.int64)
    products = r @ np.array(lat.gram_rows, dtype=np.int64) @ r.T
    unseen = set(range(len(roots)))
    components = []
    while unseen:
        stack = [unseen.pop()]
        members = []
        while stack:
            i = stack.pop()
            members.append(i)
            linked = [j for j in list(unseen) if products[i, j]]
            unseen.difference_update(linked)
            stack.extend(linked)
        rank = int(np.linalg.matrix_rank(r[members].astype(float)))
        components.append(_component_type(rank, 2 * len(members)))
    return components


def root_label(components: Iterable[tuple[str, int]]) -> str:
    """Label such as ``A7^2D5``: letters in order, larger ranks first."""
    tally: dict[tuple[str, int], int] = defaultdict(int)
    for component in components:
        tally[component] += 1
    parts = []
    ordered = sorted(tally.items(), key=lambda t: (t[0][0], -t[0][1]))
    for (letter, rank), times in ordered:
        parts.append(f"{letter}{rank}" + (f"^{times}" if times > 1 else ""))
    return "".join(parts)


def root_system(lat: Lattice) -> str:
    return root_label(root_components(lat))


# Gram files


def _parse_rational_row(line: str, path) -> list[Rational]:
    try:
        return [Rational(token) for token in line.split()]
    except (TypeError, ValueError) as exc:
        raise DataFormatError(f"Bad rational entry in {path}: {line!r}") from exc


def read_gram_file(path) -> Lattice:
    """Read ``n``, n rows of rationals, and an optional ``BASIS <scale>`` block.

    Raises:
        DataFormatError: If the file cannot be parsed or the basis disagrees
            with the Gram matrix.
    """
    with open(path, encoding="utf-8") as handle:
        lines = [
            line.strip()
            for line in handle
            if line.strip() and not line.lstrip().startswith("#")
        ]
    try:
        n = int(lines[0])
    except (IndexError, ValueError) as exc:
        raise DataFormatError(f"{path}: first line must be the rank") from exc
    gram = [_parse_rational_row(line, path) for line in lines[1 : n + 1]]
    if len(gram) != n or any(len(row) != n for row in gram):
        raise DataFormatError(f"{path}: expected {n} rows of {n} entries")

    rest = lines[n + 1 :]
    if not rest:
        return lattice_from_gram(gram)
    header = rest[0].split()
    if header[0] != "BASIS" or len(header) > 2:
        raise DataFormatError(f"{path}: unexpected line {rest[0]!r}")
    scale = int(header[1]) if len(header) == 2 else 1
    basis = [_parse_rational_row(line, path) for line in rest[1:]]
    if len(basis) != n:
        raise DataFormatError(f"{path}: BASIS block needs {n} rows")
    lattice = make_lattice(basis, scale)
    if lattice.gram != ImmutableMatrix(gram):
        raise DataFormatError(f"{path}: BASIS does not reproduce the Gram matrix")
    return lattice


def write_gram_file(lat: Lattice, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(f"{lat.n}\n")
        for i in range(lat.n):
            handle.write(" ".join(str(lat.gram[i, j]) for j in range(lat.n)) + "\n")
        handle.write(f"BASIS {lat.scale}\n")
        for i in range(lat.n):
            handle.write(
                " ".join(str(lat.basis[i, j]) for j in range(lat.dim)) + "\n"
            )
