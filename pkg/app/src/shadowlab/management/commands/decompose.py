from fractions import Fraction

from django.core.management.base import CommandError

from shadowlab.conf import get_setting
from shadowlab.exceptions import NotInSpanError, SeriesError
from shadowlab.management.base import USAGE_ERROR, ShadowLabCommand
from shadowlab.modular import decompose, evaluate, shadow_series, shadow_valuation
from shadowlab.scode import gleason_solve, shadow_from_gleason


def _parse_numbers(tokens: list[str]) -> list[Fraction]:
    try:
        return [Fraction(token) for token in tokens]
    except (ValueError, ZeroDivisionError) as exc:
        raise CommandError(
            f"Not a rational number: {exc}", returncode=USAGE_ERROR
        ) from exc


def decompose_theta(n: int, counts: list[Fraction], prec: int) -> dict[str, object]:
    """Hecke coefficients from N_0, N_1, ...; counts beyond floor(n/8) are checked."""
    size = n // 8 + 1
    if len(counts) < size:
        raise SeriesError(f"Rank {n} needs {size} leading counts, got {len(counts)}")
    p = decompose(n, counts[:size])
    theta = evaluate(p, max(prec, 4 * len(counts)))
    for k, count in enumerate(counts[size:], start=size):
        if theta.coefficient(4 * k) != count:
            raise SeriesError(
                f"N_{k}={count} contradicts the series fixed by the first {size} "
                f"counts, which has N_{k}={theta.coefficient(4 * k)}"
            )
    return {
        "rank": n,
        "hecke_coefficients": p.coeffs,
        "monomial_coefficients": p.to_monomial(),
        "theta": {e // 4: c for e, c in theta.truncate(prec).items() if e % 4 == 0},
        "shadow": dict(shadow_series(p, prec).items()),
        "min_char_norm": shadow_valuation(p, prec),
    }


def decompose_enumerator(n: int, counts: list[Fraction]) -> dict[str, object]:
    """Gleason coefficients from A_0, A_2, ...; extra even-weight counts are checked."""
    size = n // 8 + 1
    if len(counts) < size:
        raise SeriesError(f"Length {n} needs {size} leading counts, got {len(counts)}")
    p = gleason_solve(n, counts[:size])
    enum = p.evaluate()
    for k, count in enumerate(counts[size:], start=size):
        if enum[2 * k] != count:
            raise NotInSpanError(
                f"A_{2 * k}={count} contradicts the enumerator fixed by the first "
                f"{size} counts, which has A_{2 * k}={enum[2 * k]}"
            )
    return {
        "length": n,
        "gleason_coefficients": p.coeffs,
        "weight_enumerator": str(enum),
        "shadow_enumerator": str(shadow_from_gleason(p)),
    }


class Command(ShadowLabCommand):
    help = "Decompose leading theta or weight counts in the Hecke or Gleason basis"

    def add_arguments(self, parser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument(
            "--theta", nargs="+", metavar="N_k", help="Norm counts N_0, N_1, ..."
        )
        source.add_argument(
            "--enum", nargs="+", metavar="A_2k", help="Weight counts A_0, A_2, A_4, ..."
        )
        parser.add_argument("--n", type=int, required=True, help="Rank or code length")
        parser.add_argument(
            "--prec", type=int, help="Series precision in quarter-exponents"
        )
        parser.add_argument("--json", action="store_true", help="Print a JSON report")

    def run(self, *args, **options):
        n = options["n"]
        if options["theta"]:
            prec = options["prec"]
            if prec is None:
                prec = get_setting("SHADOWLAB_PREC")
            if prec < 1:
                raise CommandError("--prec must be positive", returncode=USAGE_ERROR)
            counts = _parse_numbers(options["theta"])
            values = decompose_theta(n, counts, prec)
            subject = f"theta of rank {n}"
        else:
            counts = _parse_numbers(options["enum"])
            values = decompose_enumerator(n, counts)
            subject = f"weight enumerator of length {n}"
        self.emit("decompose", subject, values, options["json"])
