import json
from dataclasses import dataclass, field
from fractions import Fraction

from rest_framework import serializers

PROVENANCES = ("table", "closed-form", "derived", "trivial")


def format_value(value) -> str:
    """Render a value exactly and deterministically."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return "{" + ", ".join(
            f"{format_value(k)}: {format_value(v)}" for k, v in sorted(value.items())
        ) + "}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(format_value(v) for v in value) + ")"
    return str(value)


@dataclass
class CheckRecord:
    name: str
    anchor: str
    identity: str
    expected: str
    provenance: str
    computed: str
    passed: bool
    runtime_ms: float | None = None


@dataclass
class Report:
    """Outcome of one command: the echoed command line and its check records."""

    command: str
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [record for record in self.records if not record.passed]


class CheckRecordSerializer(serializers.Serializer):
    """
    Single check of a report
    """

    name = serializers.CharField()
    anchor = serializers.CharField()
    identity = serializers.CharField(allow_blank=True)
    expected = serializers.CharField(allow_blank=True)
    provenance = serializers.ChoiceField(choices=PROVENANCES)
    computed = serializers.CharField(allow_blank=True)
    passed = serializers.BooleanField()
    runtime_ms = serializers.FloatField(required=False, allow_null=True)

    def to_representation(self, instance):
        data = super().to_representation(instance)
        # runtime_ms only with --timings.
        if not self.context.get("timings"):
            data.pop("runtime_ms", None)
        elif data.get("runtime_ms") is not None:
            data["runtime_ms"] = round(data["runtime_ms"], 1)
        return data


class ReportSerializer(serializers.Serializer):
    """
    Report of a command with its records sorted by name
    """

    command = serializers.CharField()
    passed = serializers.BooleanField()
    records = serializers.SerializerMethodField()

    def get_records(self, obj):
        ordered = sorted(obj.records, key=lambda record: record.name)
        return CheckRecordSerializer(ordered, many=True, context=self.context).data


class InfoSerializer(serializers.Serializer):
    """
    Key/value listing printed by lattice_info, code_info and decompose
    """

    command = serializers.CharField()
    subject = serializers.CharField()
    values = serializers.DictField(child=serializers.CharField(allow_blank=True))


def render_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True)


def report_json(report: Report, timings: bool = False) -> str:
    return render_json(ReportSerializer(report, context={"timings": timings}).data)


def report_text(report: Report, timings: bool = False) -> str:
    lines = [report.command]
    for record in sorted(report.records, key=lambda r: r.name):
        status = "PASS" if record.passed else "FAIL"
        line = (
            f"{status} {record.name} [{record.anchor}]: {record.computed} "
            f"(expected {record.expected}, {record.provenance})"
        )
        if timings and record.runtime_ms is not None:
            line += f" [{record.runtime_ms:.1f} ms]"
        lines.append(line)
    passed = sum(record.passed for record in report.records)
    lines.append(f"{passed}/{len(report.records)} checks passed")
    return "\n".join(lines)


def info_json(command: str, subject: str, values: dict[str, object]) -> str:
    data = {
        "command": command,
        "subject": subject,
        "values": {key: format_value(value) for key, value in values.items()},
    }
    serializer = InfoSerializer(data=data)
    serializer.is_valid(raise_exception=True)
    return render_json(serializer.validated_data)


def info_text(subject: str, values: dict[str, object]) -> str:
    width = max((len(key) for key in values), default=0)
    lines = [subject]
    for key, value in values.items():
        lines.append(f"  {key.ljust(width)}  {format_value(value)}")
    return "\n".join(lines)
