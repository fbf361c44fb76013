import logging

from django.core.management.base import CommandError

from shadowlab.catalog import code_by_name
from shadowlab.management.base import USAGE_ERROR, ShadowLabCommand
from shadowlab.scode import (
    BinaryCode,
    classify_a4,
    gleason_decompose,
    is_self_dual,
    read_generator_file,
    shadow_enumerator,
    weight_enumerator,
)

logger = logging.getLogger(__name__)


def describe_code(code: BinaryCode) -> dict[str, object]:
    enum = weight_enumerator(code)
    values: dict[str, object] = {
        "length": code.n,
        "dimension": code.k,
        "self_dual": is_self_dual(code),
        "min_weight": enum.lowest(1),
        "weight_enumerator": str(enum),
        "weight_counts": enum.support(),
    }
    if not values["self_dual"]:
        return values

    shadow = shadow_enumerator(code)
    weight = shadow.lowest()
    values["shadow_enumerator"] = str(shadow)
    values["shadow_min_weight"] = weight
    values["shadow_min_count"] = shadow[weight]
    values["gleason"] = gleason_decompose(enum).coeffs
    n = code.n
    if 8 <= n <= 22 and enum[2] == 0:
        status = classify_a4(n, int(enum[4]))
        values["extremal"] = status.extremal
        if status.shadow_defect is not None:
            values["predicted_shadow_defect"] = status.shadow_defect
    return values


class Command(ShadowLabCommand):
    help = "Show weight enumerator, shadow and Gleason coefficients of a binary code"

    def add_arguments(self, parser):
        parser.add_argument(
            "name", nargs="?", help="Catalog name, z<r>, g24 or a sum like e8+z3"
        )
        parser.add_argument("--file", help="Generator matrix file instead of a name")
        parser.add_argument("--json", action="store_true", help="Print a JSON report")

    def run(self, *args, **options):
        name, path = options["name"], options["file"]
        if bool(name) == bool(path):
            raise CommandError(
                "Give either a code name or --file", returncode=USAGE_ERROR
            )

        code = read_generator_file(path) if path else code_by_name(name)
        subject = path or name
        logger.info(f"Describing code {subject}")
        self.emit("code-info", subject, describe_code(code), options["json"])
