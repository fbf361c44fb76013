import logging

from django.core.management.base import CommandError

from shadowlab.catalog import lattice_by_name
from shadowlab.lattice import (
    Lattice,
    enumerate_norms,
    read_gram_file,
    root_system,
    shadow_norm_counts,
    shortest_characteristic,
)
from shadowlab.management.base import USAGE_ERROR, ShadowLabCommand
from shadowlab.modular import classify_n2, extremal_n2

logger = logging.getLogger(__name__)


def describe_lattice(
    lattice: Lattice, max_norm: int, shadow_norm: int | None = None
) -> dict[str, object]:
    counts = enumerate_norms(lattice, max_norm)
    values: dict[str, object] = {
        "rank": lattice.n,
        "det": lattice.det,
        "integral": lattice.is_integral,
        "unimodular": lattice.is_unimodular,
        "even": lattice.is_even,
        "norm_counts": counts.as_dict(),
        "roots": root_system(lattice) or "none",
    }
    if not lattice.is_unimodular:
        return values

    norm, count = shortest_characteristic(lattice)
    values["min_char_norm"] = norm
    values["min_char_count"] = count
    if shadow_norm is not None:
        values["shadow_counts"] = shadow_norm_counts(lattice, shadow_norm).as_dict()
    n = lattice.n
    if 8 <= n <= 23 and max_norm >= 2 and counts[1] == 0:
        status = classify_n2(n, counts[2])
        values["n2_bound"] = extremal_n2(n)
        values["extremal"] = status.extremal
        if status.shadow_defect is not None:
            values["predicted_shadow_defect"] = status.shadow_defect
    return values


class Command(ShadowLabCommand):
    help = "Show rank, determinant, norm counts and characteristic vectors of a lattice"

    def add_arguments(self, parser):
        parser.add_argument(
            "name",
            nargs="?",
            help="Catalog name, Z<n>, E8^2, D16+, a root lattice or a sum like E8+Z2",
        )
        parser.add_argument("--file", help="Gram file to read instead of a name")
        parser.add_argument(
            "--max-norm",
            type=int,
            default=2,
            help="Count lattice vectors up to this norm (default: %(default)s)",
        )
        parser.add_argument(
            "--shadow-norm",
            type=int,
            help="Also count characteristic vectors up to this norm",
        )
        parser.add_argument("--json", action="store_true", help="Print a JSON report")

    def run(self, *args, **options):
        name, path = options["name"], options["file"]
        if bool(name) == bool(path):
            raise CommandError(
                "Give either a lattice name or --file", returncode=USAGE_ERROR
            )
        if options["max_norm"] < 0:
            raise CommandError(
                "--max-norm must be non-negative", returncode=USAGE_ERROR
            )

        lattice = read_gram_file(path) if path else lattice_by_name(name)
        subject = path or name
        logger.info(f"Describing lattice {subject}")
        values = describe_lattice(lattice, options["max_norm"], options["shadow_norm"])
        self.emit("lattice-info", subject, values, options["json"])
