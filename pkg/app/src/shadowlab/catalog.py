"""Named lattices and codes: the extremal catalog and a few classical objects.

Catalog entries are described by small text files under ``SHADOWLAB_DATA``:

    lattices/*.glue   NAME, N2, ROOT <components>, GLUE <class per component>,
                      GLUE-CODE <code>, CONSTRUCT <builder>
    codes/*.code      NAME, BLOCKS <components>, GLUE <class per component>,
                      CONSTRUCT <builder>

Components may carry a multiplicity, e.g. ``D4^5``.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from sympy import Matrix

from shadowlab.conf import get_setting
from shadowlab.exceptions import CatalogError, DataFormatError, ShadowLabError
from shadowlab.lattice import (
    Lattice,
    components_sum,
    direct_sum,
    enumerate_norms,
    fundamental_weight,
    glue,
    glue_vector,
    hnf_rows,
    integer_lattice,
    make_lattice,
    root_lattice,
    root_system,
    span_basis,
)
from shadowlab.scode import (
    BinaryCode,
    code_direct_sum,
    golay24,
    is_self_dual,
    make_code,
    repetition_code,
    shorter_golay,
    word_from_bits,
)

logger = logging.getLogger(__name__)

LATTICE_NAMES = (
    "E8",
    "D12",
    "E7^2",
    "A15",
    "D8^2",
    "A11E6",
    "D6^3",
    "A9^2",
    "A7^2D5",
    "D4^5",
    "A5^4",
    "A3^7",
    "A1^22",
    "O23",
)

CODE_NAMES = ("e8", "d12", "e7^2", "d8^2", "d6^3", "d4^5", "g22")

# Codes whose lifts carry the same name in upper case.
CODE_LIFTS = {name: name.upper() for name in CODE_NAMES[:-1]} | {"g22": "A1^22"}


@dataclass(frozen=True)
class Entry:
    """One parsed catalog file."""

    name: str
    path: Path
    n2: int | None
    components: tuple[str, ...]
    glue: tuple[tuple[int, ...], ...]
    glue_code: str | None
    construct: str | None


def _expand(tokens: list[str]) -> tuple[str, ...]:
    parts = []
    for token in tokens:
        for piece in re.findall(r"[A-Za-z]\d+(?:\^\d+)?", token):
            kind, _, times = piece.partition("^")
            parts.extend([kind] * int(times or 1))
    return tuple(parts)


def _parse(path: Path) -> Entry:
    fields: dict[str, list[str]] = {}
    rows: list[tuple[int, ...]] = []
    with open(path, encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            keyword, *args = line.split()
            if keyword == "GLUE":
                try:
                    rows.append(tuple(int(a) for a in args))
                except ValueError as exc:
                    raise DataFormatError(
                        f"{path}:{number}: bad glue {line!r}"
                    ) from exc
            elif keyword in ("NAME", "N2", "ROOT", "BLOCKS", "GLUE-CODE", "CONSTRUCT"):
                fields[keyword] = args
            else:
                raise DataFormatError(f"{path}:{number}: unknown keyword {keyword!r}")
    if "NAME" not in fields:
        raise DataFormatError(f"{path}: missing NAME")
    components = _expand(fields.get("ROOT", fields.get("BLOCKS", [])))
    for row in rows:
        if len(row) != len(components):
            raise DataFormatError(
                f"{path}: glue {row} does not match {len(components)} components"
            )
    n2 = fields.get("N2")
    return Entry(
        name=fields["NAME"][0],
        path=path,
        n2=int(n2[0]) if n2 else None,
        components=components,
        glue=tuple(rows),
        glue_code=(fields.get("GLUE-CODE") or [None])[0],
        construct=(fields.get("CONSTRUCT") or [None])[0],
    )


@lru_cache(maxsize=8)
def _entries(directory: str, suffix: str) -> dict[str, Entry]:
    folder = Path(directory)
    if not folder.is_dir():
        raise CatalogError(f"Catalog directory {folder} does not exist")
    entries = {}
    for path in sorted(folder.glob(f"*.{suffix}")):
        entry = _parse(path)
        entries[entry.name] = entry
    return entries


def lattice_entries() -> dict[str, Entry]:
    return _entries(str(Path(get_setting("SHADOWLAB_DATA")) / "lattices"), "glue")


def code_entries() -> dict[str, Entry]:
    return _entries(str(Path(get_setting("SHADOWLAB_DATA")) / "codes"), "code")


# Leech lattice and its shorter cousin


def leech() -> Lattice:
    """Leech lattice in coordinates scaled by sqrt(8), from the extended Golay code."""
    rows = [[2 * ((g >> j) & 1) for j in range(24)] for g in golay24().gens]
    for j in range(1, 24):
        row = [0] * 24
        row[0] = row[j] = 4
        rows.append(row)
    rows.append([8] + [0] * 23)
    rows.append([-3] + [1] * 23)
    lattice = make_lattice(hnf_rows(Matrix(rows)), scale=8, name="Leech")
    if lattice.det != 1 or not lattice.is_even:
        raise CatalogError("Leech generators did not give an even unimodular lattice")
    return lattice


def shorter_leech() -> Lattice:
    """Rank-23 odd unimodular lattice with minimal norm 3.

    Keeps the Leech vectors x with (x, v) even for a norm-4 vector v and
    projects them onto the orthogonal complement of v.
    """
    big = leech()
    v = Matrix([[4, 4] + [0] * 22])
    basis = big.basis
    parity = [int((basis[i, :] * v.T)[0, 0] / 8) % 2 for i in range(24)]
    odd = parity.index(1)
    rows = []
    for i in range(24):
        if i == odd:
            rows.append(2 * basis[i, :])
        else:
            rows.append(basis[i, :] + basis[odd, :] if parity[i] else basis[i, :])
    projected = [r - (r * v.T)[0, 0] / 32 * v for r in rows]
    lattice = make_lattice(span_basis(Matrix.vstack(*projected)), scale=8, name="O23")
    if lattice.n != 23 or lattice.det != 1:
        raise CatalogError("Projection of the Leech sublattice is not unimodular")
    return lattice


def even_d16() -> Lattice:
    lattice = glue(root_lattice("D16"), [fundamental_weight("D16", 1)])
    return Lattice(lattice.basis, lattice.scale, "D16+")


_LATTICE_BUILDERS = {"shorter-leech": shorter_leech}


@lru_cache(maxsize=32)
def _build_lattice(name: str, directory: str) -> Lattice:
    entries = lattice_entries()
    if name not in entries:
        raise CatalogError(f"Unknown catalog lattice {name!r}")
    entry = entries[name]
    if entry.construct:
        builder = _LATTICE_BUILDERS.get(entry.construct)
        if builder is None:
            raise DataFormatError(f"{entry.path}: unknown builder {entry.construct!r}")
        lattice = builder()
    else:
        rows = list(entry.glue)
        if entry.glue_code:
            code = catalog_code(entry.glue_code)
            rows += [tuple((g >> j) & 1 for j in range(code.n)) for g in code.gens]
        vectors = [glue_vector(entry.components, row) for row in rows]
        lattice = glue(components_sum(entry.components), vectors)
    lattice = Lattice(lattice.basis, lattice.scale, name)
    if not lattice.is_unimodular:
        raise CatalogError(
            f"Catalog lattice {name} is not unimodular (det {lattice.det})"
        )
    counts = enumerate_norms(lattice, 2)
    if counts[1] or (entry.n2 is not None and counts[2] != entry.n2):
        raise CatalogError(
            f"Catalog lattice {name} has N1={counts[1]}, N2={counts[2]}; "
            f"expected N1=0, N2={entry.n2}"
        )
    logger.info(f"Built catalog lattice {name} of rank {lattice.n}")
    return lattice


def catalog(name: str) -> Lattice:
    """One of the fourteen extremal lattices, validated on construction.

    Raises:
        CatalogError: If the name is unknown or the entry fails det, N1 or N2.
    """
    return _build_lattice(name, get_setting("SHADOWLAB_DATA"))


def expected_root_label(name: str) -> str:
    return "" if name == "O23" else name


def validate_catalog_entry(name: str, lattice: Lattice):
    """Check det, integrality, N1, N2 and the root system against the catalog.

    Raises:
        CatalogError: Describing the first failed invariant.
    """
    entry = lattice_entries().get(name)
    if entry is None:
        raise CatalogError(f"Unknown catalog lattice {name!r}")
    if not lattice.is_unimodular:
        raise CatalogError(f"{name}: not an integral unimodular lattice")
    counts = enumerate_norms(lattice, 2)
    if counts[1]:
        raise CatalogError(f"{name}: has {counts[1]} vectors of norm 1")
    if counts[2] != entry.n2:
        raise CatalogError(f"{name}: N2={counts[2]}, expected {entry.n2}")
    label = root_system(lattice)
    if label != expected_root_label(name):
        raise CatalogError(f"{name}: root system {label!r} does not match")


_SPECIAL_LATTICES = {
    "E8^2": lambda: direct_sum(catalog("E8"), catalog("E8")),
    "D16+": even_d16,
}


def _lattice_part(name: str) -> Lattice:
    if name in lattice_entries():
        return catalog(name)
    if name in _SPECIAL_LATTICES:
        return _SPECIAL_LATTICES[name]()
    match = re.fullmatch(r"Z(\d*)", name)
    if match:
        return integer_lattice(int(match.group(1) or 1))
    try:
        return root_lattice(name)
    except ShadowLabError as exc:
        raise CatalogError(f"Unknown lattice {name!r}") from exc


def lattice_by_name(name: str) -> Lattice:
    """Resolve catalog names, ``Z<n>``, ``E8^2``, ``D16+``, root lattices and
    ``+``-joined direct sums such as ``E8+Z2``.
    """
    parts = [part.strip() for part in name.split("+") if part.strip()]
    if name.strip() == "D16+":
        parts = ["D16+"]
    if not parts:
        raise CatalogError("Empty lattice name")
    lattice = _lattice_part(parts[0])
    for part in parts[1:]:
        lattice = direct_sum(lattice, _lattice_part(part))
    return lattice


# Codes


def code_block(kind: str) -> tuple[BinaryCode, dict[int, int]]:
    """Component code and its glue words by class.

    ``d<2k>`` is the set of unions of an even number of the k coordinate pairs,
    with glue a = 0101...01, b = the last pair and c = a + b. ``e7`` is the
    [7, 3, 4] simplex code with glue 1111111.
    """
    match = re.fullmatch(r"([de])(\d+)", kind)
    if not match:
        raise CatalogError(f"Unknown code block {kind!r}")
    letter, length = match.group(1), int(match.group(2))
    if letter == "e":
        if length != 7:
            raise CatalogError(f"Unknown code block {kind!r}")
        rows = [
            word_from_bits(int(ch) for ch in word)
            for word in ("1110100", "0111010", "0011101")
        ]
        return BinaryCode(7, tuple(rows), kind), {1: 0b1111111}
    if length < 2 or length % 2:
        raise CatalogError(f"Block {kind!r} needs an even length")
    pairs = length // 2
    rows = [0b1111 << (2 * i) for i in range(pairs - 1)]
    a = sum(1 << (2 * i + 1) for i in range(pairs))
    b = 0b11 << (length - 2)
    return BinaryCode(length, tuple(rows), kind), {1: a, 2: b, 3: a ^ b}


_CODE_BUILDERS = {"shorter-golay": shorter_golay}


@lru_cache(maxsize=32)
def _build_code(name: str, directory: str) -> BinaryCode:
    entries = code_entries()
    if name not in entries:
        raise CatalogError(f"Unknown catalog code {name!r}")
    entry = entries[name]
    if entry.construct:
        builder = _CODE_BUILDERS.get(entry.construct)
        if builder is None:
            raise DataFormatError(f"{entry.path}: unknown builder {entry.construct!r}")
        code = builder()
    else:
        blocks = [code_block(kind) for kind in entry.components]
        offsets, total = [], 0
        for block, _ in blocks:
            offsets.append(total)
            total += block.n
        rows = [
            g << offset
            for (block, _), offset in zip(blocks, offsets)
            for g in block.gens
        ]
        for classes in entry.glue:
            word = 0
            for (_, words), offset, cls in zip(blocks, offsets, classes):
                if cls:
                    if cls not in words:
                        raise DataFormatError(
                            f"{entry.path}: block has no glue class {cls}"
                        )
                    word ^= words[cls] << offset
            rows.append(word)
        code = make_code(rows, total, name)
    code = BinaryCode(code.n, code.gens, name)
    if not is_self_dual(code):
        raise CatalogError(f"Catalog code {name} is not self-dual")
    logger.info(f"Built catalog code {name} of length {code.n}")
    return code


def catalog_code(name: str) -> BinaryCode:
    """One of the seven extremal codes, or the repetition code z.

    Raises:
        CatalogError: If the name is unknown or the entry is not self-dual.
    """
    return _build_code(name, get_setting("SHADOWLAB_DATA"))


code_catalog = catalog_code


def _code_part(name: str) -> BinaryCode:
    if name in code_entries():
        return catalog_code(name)
    match = re.fullmatch(r"z(\d+)", name)
    if match:
        code = BinaryCode(0, (), "")
        for _ in range(int(match.group(1))):
            code = code_direct_sum(code, repetition_code())
        return BinaryCode(code.n, code.gens, name)
    if name == "g24":
        return golay24()
    raise CatalogError(f"Unknown code {name!r}")


def code_by_name(name: str) -> BinaryCode:
    """Resolve catalog names, ``z<r>``, ``g24`` and ``+``-joined sums."""
    parts = [part.strip() for part in name.split("+") if part.strip()]
    if not parts:
        raise CatalogError("Empty code name")
    code = _code_part(parts[0])
    for part in parts[1:]:
        code = code_direct_sum(code, _code_part(part))
    return code
