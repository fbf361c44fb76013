"""Acceptance suites run by the ``verify`` command.

Each check computes an expected value (from the table, a closed form, or an
independent derivation) and a computed value, and passes iff they are equal.
Every check names the anchor it verifies. A failed identity (MismatchError)
or an unexpected error is recorded as a failed check; other library and I/O
errors propagate.
"""

import logging
import random
import time
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

from shadowlab import catalog as cat
from shadowlab.conf import get_setting
from shadowlab.exceptions import MismatchError, ShadowLabError
from shadowlab.lattice import (
    Lattice,
    direct_sum,
    enumerate_norms,
    integer_lattice,
    reduce,
    root_system,
    shadow_norm_counts,
    shortest_characteristic,
)
from shadowlab.lift import (
    construction_a,
    lift_root_types_ok,
    roots_from_construction_a,
    verify_shadow_identity,
    verify_theta_identity,
)
from shadowlab.modular import (
    check_congruence,
    decompose,
    evaluate,
    excess_mod16,
    extremal_n2,
    extremal_shadow_count,
    extremal_theta,
    low_rank_parity_holds,
    predict_shadow_defect,
)
from shadowlab.reports import CheckRecord, Report, format_value
from shadowlab.scode import (
    BinaryCode,
    code_direct_sum,
    extremal_a4,
    extremal_shadow_words,
    gleason_decompose,
    macwilliams,
    repetition_code,
    shadow_enumerator,
    shadow_from_gleason,
    shadow_min_weight,
    shadow_transform,
    split_z,
    weight_enumerator,
)

logger = logging.getLogger(__name__)

SUITES = ("theorem1", "theorem1a", "construction-a", "congruence", "reduction", "all")

# (n, N2) of the extremal lattices without norm-1 vectors.
EXTREMAL_N2_TABLE = (
    (8, 240),
    (12, 264),
    (14, 252),
    (15, 240),
    (16, 224),
    (17, 204),
    (18, 180),
    (19, 152),
    (20, 120),
    (21, 84),
    (22, 44),
    (23, 0),
)

REDUCTION_LATTICES = ("E8", "D12", "E7^2", "A15", "D8^2")
REDUCTION_CODES = ("e8", "d12", "e7^2", "d8^2", "d6^3")
RANDOM_SUMS = 20
RANDOM_SEED = 1729
CODE_LENGTHS = {
    "e8": 8,
    "d12": 12,
    "e7^2": 14,
    "d8^2": 16,
    "d6^3": 18,
    "d4^5": 20,
    "g22": 22,
}

# Reference each check verifies, as printed in every record.
ANCHOR_THETA_L = "Eq. (thetaL)"
ANCHOR_HECKE = "Hecke's theorem paragraph"
ANCHOR_LATTICE_TABLE = "table after Theorem 1"
ANCHOR_ROOTS = "table after Theorem 1"
ANCHOR_BOUND = "Theorem 1(i)"
ANCHOR_SHADOW_MIN = "Theorem 1(ii)"
ANCHOR_SHADOW_COUNT = "Theorem 1(iii)"
ANCHOR_SHADOW_DEFECT = "Eq. (n-16)"
ANCHOR_CONGRUENCE = "Eq. (25-n)"
ANCHOR_CODE_TABLE = "Theorem 1A"
ANCHOR_CODE_BOUND = "Theorem 1A(i)"
ANCHOR_CODE_SHADOW_MIN = "Theorem 1A(ii)"
ANCHOR_CODE_SHADOW_COUNT = "Theorem 1A(iii)"
ANCHOR_GLEASON = "Gleason's theorem paragraph"
ANCHOR_SHADOW_TRANSFORM = "Eq. (W&W')"
ANCHOR_LC = "Eq. (LC)"
ANCHOR_THETA_LC = "Eq. (thetaLC)"
ANCHOR_N2_LC = "sentence after Eq. (thetaLC)"
ANCHOR_SHADOW_LC = "Eq. (L'C)"
ANCHOR_CODE_LIFTS = "each of those lattices arises as L_C for a unique code"
ANCHOR_DIRECT_SUM = "Eq. (oplus)"
ANCHOR_LATTICE_REDUCTION = "Z^r ⊕ L₀ reduction"
ANCHOR_CODE_REDUCTION = "C₀⊕z^r reduction"


@dataclass(frozen=True)
class Check:
    """One named comparison; ``run`` returns (expected, computed)."""

    name: str
    anchor: str
    identity: str
    provenance: str
    run: Callable[[], tuple[object, object]]


def run_check(check: Check) -> CheckRecord:
    start = time.perf_counter()
    try:
        expected, computed = check.run()
        passed = expected == computed
        expected, computed = format_value(expected), format_value(computed)
    except MismatchError as exc:
        expected, computed = format_value(exc.expected), format_value(exc.computed)
        passed = False
    except (ShadowLabError, OSError):
        raise
    except Exception as exc:
        logger.error(f"Check {check.name} raised: {exc}", exc_info=True)
        expected, computed, passed = "n/a", f"error: {exc}", False
    elapsed = (time.perf_counter() - start) * 1000
    if not passed:
        logger.warning(f"Check {check.name} failed: {computed} != {expected}")
    return CheckRecord(
        check.name,
        check.anchor,
        check.identity,
        expected,
        check.provenance,
        computed,
        passed,
        elapsed,
    )


def run_suite(suite: str, prec: int, command: str = "") -> Report:
    """Run every check of ``suite`` (``all`` runs every suite)."""
    if suite not in SUITES:
        raise ShadowLabError(
            f"Unknown suite {suite!r}; choose from {', '.join(SUITES)}"
        )
    checks = build_checks(suite, prec)
    logger.info(f"Running {len(checks)} checks of suite {suite}")
    records = [run_check(check) for check in sorted(checks, key=lambda c: c.name)]
    return Report(command or f"verify {suite}", records)


def build_checks(suite: str, prec: int) -> list[Check]:
    builders = {
        "theorem1": theorem1_checks,
        "theorem1a": theorem1a_checks,
        "construction-a": lambda: construction_a_checks(prec),
        "congruence": congruence_checks,
        "reduction": reduction_checks,
    }
    if suite == "all":
        return [check for build in builders.values() for check in build()]
    return builders[suite]()


# Shared, expensive computations


@lru_cache(maxsize=None)
def _shortest(name: str) -> tuple[int, int]:
    return shortest_characteristic(cat.lattice_by_name(name))


@lru_cache(maxsize=None)
def _norms(name: str, bound: int) -> dict[int, int]:
    return enumerate_norms(cat.lattice_by_name(name), bound).as_dict()


def _n2(name: str) -> int:
    return _norms(name, 2).get(2, 0)


@lru_cache(maxsize=None)
def _shadow_report(name: str):
    return verify_shadow_identity(cat.catalog_code(name))


def _enum_norm() -> int:
    return get_setting("SHADOWLAB_ENUM_NORM")


# Lattice bound and shadow theorem


def theorem1_checks() -> list[Check]:
    checks = []
    for n, n2 in EXTREMAL_N2_TABLE:
        checks.append(
            Check(
                f"theorem1/extremal-theta/{n:02d}",
                ANCHOR_THETA_L,
                "coefficient of q^2 in the extremal theta series = N2",
                "table",
                lambda n=n, n2=n2: (n2, evaluate(extremal_theta(n), 12).coefficient(8)),
            )
        )
    for name in cat.LATTICE_NAMES:
        checks.extend(_lattice_checks(name))
    checks.append(
        Check(
            "theorem1/E8^2/shadow-defect",
            ANCHOR_SHADOW_DEFECT,
            "N'_(n-16) = 2^(n-24) (N2 - 2n(23-n))",
            "closed-form",
            lambda: (
                predict_shadow_defect(16, _n2("E8^2")),
                shadow_norm_counts(cat.lattice_by_name("E8^2"), 0)[0],
            ),
        )
    )
    return checks


def _lattice_checks(name: str) -> list[Check]:
    prefix = f"theorem1/{name}"

    def rank() -> int:
        return cat.catalog(name).n

    def roundtrip():
        bound = _enum_norm()
        counts = _norms(name, bound)
        n = rank()
        leading = [counts.get(k, 0) for k in range(n // 8 + 1)]
        series = evaluate(decompose(n, leading), 4 * bound + 1)
        expected = [counts.get(k, 0) for k in range(bound + 1)]
        return expected, [int(series.coefficient(4 * k)) for k in range(bound + 1)]

    return [
        Check(
            f"{prefix}/n1",
            ANCHOR_LATTICE_TABLE,
            "no vectors of norm 1",
            "table",
            lambda: (0, _norms(name, 2).get(1, 0)),
        ),
        Check(
            f"{prefix}/n2",
            ANCHOR_BOUND,
            "N2 = 2n(23-n)",
            "closed-form",
            lambda: (extremal_n2(rank()), _n2(name)),
        ),
        Check(
            f"{prefix}/roots",
            ANCHOR_ROOTS,
            "root system of the norm-2 vectors",
            "table",
            lambda: (cat.expected_root_label(name), root_system(cat.catalog(name))),
        ),
        Check(
            f"{prefix}/shadow-min",
            ANCHOR_SHADOW_MIN,
            "shortest characteristic norm = n - 8",
            "closed-form",
            lambda: (rank() - 8, _shortest(name)[0]),
        ),
        Check(
            f"{prefix}/shadow-count",
            ANCHOR_SHADOW_COUNT,
            "N'_(n-8) = 2^(n-11) n",
            "closed-form",
            lambda: (extremal_shadow_count(rank()), _shortest(name)[1]),
        ),
        Check(
            f"{prefix}/shadow-parity",
            ANCHOR_SHADOW_COUNT,
            "N'_(n-8) is even unless n = 8",
            "derived",
            lambda: (True, low_rank_parity_holds(rank(), _shortest(name)[1])),
        ),
        Check(
            f"{prefix}/hecke-roundtrip",
            ANCHOR_HECKE,
            "evaluate(decompose(N_0..N_[n/8])) = enumerated theta",
            "derived",
            roundtrip,
        ),
    ]


# Code bound and shadow theorem


def theorem1a_checks() -> list[Check]:
    checks = []
    for name in cat.CODE_NAMES:
        checks.extend(_code_checks(name))
    rng = random.Random(RANDOM_SEED)
    for index in range(RANDOM_SUMS):
        parts = _random_sum(rng)
        checks.append(
            Check(
                f"theorem1a/coherence/{index:02d}",
                ANCHOR_SHADOW_TRANSFORM,
                f"transforms agree on {'+'.join(parts)}",
                "derived",
                lambda parts=parts: (True, _transforms_agree(_sum_code(parts))),
            )
        )
    return checks


def _random_sum(rng: random.Random, limit: int = 24) -> list[str]:
    parts, length = [], 0
    while True:
        fitting = [
            name for name, size in CODE_LENGTHS.items() if length + size <= limit
        ]
        if not fitting or (parts and rng.random() < 0.4):
            break
        choice = rng.choice(fitting)
        parts.append(choice)
        length += CODE_LENGTHS[choice]
    padding = rng.randint(0, (limit - length) // 2)
    return parts + ["z"] * padding


def _sum_code(parts: list[str]) -> BinaryCode:
    code = BinaryCode(0, (), "")
    for part in parts:
        block = repetition_code() if part == "z" else cat.catalog_code(part)
        code = code_direct_sum(code, block)
    return code


def _transforms_agree(code: BinaryCode) -> bool:
    enum = weight_enumerator(code)
    shadow = shadow_enumerator(code)
    return (
        macwilliams(enum) == enum
        and shadow_transform(enum) == shadow
        and shadow_from_gleason(gleason_decompose(enum)) == shadow
    )


def _code_checks(name: str) -> list[Check]:
    prefix = f"theorem1a/{name}"

    def code() -> BinaryCode:
        return cat.catalog_code(name)

    def shadow_count():
        c = code()
        weight = (c.n - 8) // 2
        return extremal_shadow_words(c.n), shadow_enumerator(c)[weight]

    def gleason_roundtrip():
        enum = weight_enumerator(code())
        return enum.counts, gleason_decompose(enum).evaluate().counts

    return [
        Check(
            f"{prefix}/a2",
            ANCHOR_CODE_TABLE,
            "no words of weight 2",
            "table",
            lambda: (0, weight_enumerator(code())[2]),
        ),
        Check(
            f"{prefix}/a4",
            ANCHOR_CODE_BOUND,
            "A4 = n(22-n)/8",
            "closed-form",
            lambda: (extremal_a4(code().n), weight_enumerator(code())[4]),
        ),
        Check(
            f"{prefix}/shadow-min",
            ANCHOR_CODE_SHADOW_MIN,
            "minimal shadow weight = (n-8)/2",
            "closed-form",
            lambda: ((code().n - 8) // 2, shadow_min_weight(code())),
        ),
        Check(
            f"{prefix}/shadow-count",
            ANCHOR_CODE_SHADOW_COUNT,
            "A'_((n-8)/2) = 2^((n-14)/2) n",
            "closed-form",
            shadow_count,
        ),
        Check(
            f"{prefix}/gleason-roundtrip",
            ANCHOR_GLEASON,
            "evaluate(gleason_decompose(W_C)) = W_C",
            "derived",
            gleason_roundtrip,
        ),
        Check(
            f"{prefix}/transforms",
            ANCHOR_SHADOW_TRANSFORM,
            "MacWilliams fixes W_C; signed transform = shadow enumerator",
            "derived",
            lambda: (True, _transforms_agree(code())),
        ),
    ]


# Construction A


def construction_a_checks(prec: int) -> list[Check]:
    checks = []
    for name in cat.CODE_NAMES:
        checks.extend(_lift_checks(name, prec))
    for base in ("e8", "d12", "e7^2"):
        for padding in (0, 1):
            checks.append(_norm_one_check(base, padding))
    for first, second in (("e8", "z"), ("d12", "z"), ("e8", "d12")):
        checks.append(_direct_sum_check(first, second))
    return checks


def _lift_checks(name: str, prec: int) -> list[Check]:
    prefix = f"construction-a/{name}"
    lattice_name = cat.CODE_LIFTS[name]

    def code() -> BinaryCode:
        return cat.catalog_code(name)

    def theta():
        return prec, verify_theta_identity(code(), prec).agreement_bound

    def shadow():
        c = code()
        return 2 * shadow_min_weight(c), _shadow_report(name).enumerated_norm

    def multiplicity():
        c = code()
        return shadow_min_weight(c), _shadow_report(name).multiplicity_exponent

    def n2():
        c = code()
        expected = 2 * c.n + 16 * weight_enumerator(c)[4]
        return expected, enumerate_norms(construction_a(c), 2)[2]

    def matches_catalog():
        lifted = construction_a(code())
        target = cat.catalog(lattice_name)
        expected = (target.n, _n2(lattice_name), *_shortest(lattice_name))
        found = enumerate_norms(lifted, 2)[2]
        return expected, (lifted.n, found, *shortest_characteristic(lifted))

    def roots():
        label = roots_from_construction_a(code())
        return (cat.expected_root_label(lattice_name), True), (
            label,
            lift_root_types_ok(label),
        )

    return [
        Check(
            f"{prefix}/theta",
            ANCHOR_THETA_LC,
            "theta(L_C) = W_C(theta_Z(2t), theta'_Z(2t))",
            "derived",
            theta,
        ),
        Check(
            f"{prefix}/shadow",
            ANCHOR_SHADOW_LC,
            "shortest characteristic norm of L_C = 2 * minimal shadow weight",
            "derived",
            shadow,
        ),
        Check(
            f"{prefix}/multiplicity",
            ANCHOR_SHADOW_LC,
            "minimal characteristic vectors per minimal shadow word = 2^k",
            "derived",
            multiplicity,
        ),
        Check(
            f"{prefix}/n2",
            ANCHOR_N2_LC,
            "N2(L_C) = 2n + 16 A4",
            "closed-form",
            n2,
        ),
        Check(
            f"{prefix}/lattice",
            ANCHOR_CODE_LIFTS,
            f"L_C matches {lattice_name} on rank, N2 and shortest characteristic",
            "table",
            matches_catalog,
        ),
        Check(
            f"{prefix}/roots",
            ANCHOR_CODE_LIFTS,
            "root system of L_C uses only A1, D_2m, E7, E8",
            "table",
            roots,
        ),
    ]


def _norm_one_check(base: str, padding: int) -> Check:
    label = base + "+z" * padding

    def run():
        code = cat.code_by_name(label)
        expected = 4 * weight_enumerator(code)[2]
        return expected, enumerate_norms(construction_a(code), 1)[1]

    return Check(
        f"construction-a/norm1/{label}",
        ANCHOR_LC,
        "N1(L_C) = 4 A2, so L_C has no norm-1 vectors iff C has no weight-2 words",
        "derived",
        run,
    )


def _lift_invariants(lattice: Lattice) -> tuple[int, int, int, int]:
    norm, count = shortest_characteristic(lattice)
    return lattice.n, enumerate_norms(lattice, 2)[2], norm, count


def _direct_sum_check(first: str, second: str) -> Check:
    def run():
        left, right = cat.code_by_name(first), cat.code_by_name(second)
        a = _lift_invariants(construction_a(left))
        b = _lift_invariants(construction_a(right))
        expected = (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] * b[3])
        return expected, _lift_invariants(construction_a(code_direct_sum(left, right)))

    return Check(
        f"construction-a/direct-sum/{first}+{second}",
        ANCHOR_DIRECT_SUM,
        "L_(C1+C2) = L_C1 + L_C2 on rank, N2 and shortest characteristic",
        "derived",
        run,
    )


# Congruence


def congruence_checks() -> list[Check]:
    checks = []
    for name in (*cat.LATTICE_NAMES, "E8^2", "D16+"):

        def run(name=name):
            lattice = cat.lattice_by_name(name)
            return True, check_congruence(lattice.n, _n2(name), lattice.is_even)

        def mod16(name=name):
            return True, excess_mod16(cat.lattice_by_name(name).n, _n2(name))

        checks.append(
            Check(
                f"congruence/{name}",
                ANCHOR_CONGRUENCE,
                "N2 = 2n(23-n) mod max(2, 2^(25-n))",
                "closed-form",
                run,
            )
        )
        if name in cat.LATTICE_NAMES:
            checks.append(
                Check(
                    f"congruence/{name}/mod16",
                    ANCHOR_CONGRUENCE,
                    "N2 - 2n(23-n) = 0 mod 16",
                    "derived",
                    mod16,
                )
            )
    return checks


# Splitting off Z^r and z^r


def reduction_checks() -> list[Check]:
    checks = []
    for name in REDUCTION_LATTICES:
        for r in (1, 2, 3):
            checks.append(_lattice_reduction_check(name, r))
    for name in REDUCTION_CODES:
        for r in (1, 2, 3):
            checks.append(_code_reduction_check(name, r))
    return checks


def _lattice_reduction_check(name: str, r: int) -> Check:
    def run():
        base = cat.catalog(name)
        padded = direct_sum(base, integer_lattice(r))
        norm = _shortest(name)[0]
        expected = (r, base.n, _n2(name), norm, norm + r)
        units, rest = reduce(padded)
        computed = (
            units,
            rest.n,
            enumerate_norms(rest, 2)[2],
            shortest_characteristic(rest)[0],
            shortest_characteristic(padded)[0],
        )
        return expected, computed

    return Check(
        f"reduction/{name}+Z{r}",
        ANCHOR_LATTICE_REDUCTION,
        "reduce(L0 + Z^r) = (r, L0); shortest characteristic norm shifts by r",
        "derived",
        run,
    )


def _code_reduction_check(name: str, r: int) -> Check:
    def run():
        base = cat.catalog_code(name)
        padded = cat.code_by_name(name + "+z" * r)
        weight = shadow_min_weight(base)
        expected = (r, base.n, weight_enumerator(base)[4], weight, weight + r)
        count, rest = split_z(padded)
        computed = (
            count,
            rest.n,
            weight_enumerator(rest)[4],
            shadow_min_weight(rest),
            shadow_min_weight(padded),
        )
        return expected, computed

    return Check(
        f"reduction/{name}+z{r}",
        ANCHOR_CODE_REDUCTION,
        "split_z(C0 + z^r) = (r, C0); minimal shadow weight shifts by r",
        "derived",
        run,
    )
