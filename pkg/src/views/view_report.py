"""
Text rendering of reports for the command line.
"""

import json

from src.models.scalar import Scalar


class ViewReport:

    FORMAT_TABLE = "table"
    FORMAT_JSON = "json"
    FORMATS = [FORMAT_TABLE, FORMAT_JSON]

    _COLUMN_SEPARATOR = "  "

    def __init__(self):
        raise RuntimeError("No instance of this class is permitted")

    ###########
    # Private #
    ###########

    @staticmethod
    def _format_value(value):
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, (int, float)) or hasattr(value, "denominator"):
            return Scalar.to_text(value)
        return str(value)

    @classmethod
    def _render_table(cls, header, rows):
        rows = [list(map(cls._format_value, row)) for row in rows]
        widths = [len(title) for title in header]
        for row in rows:
            widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
        lines = [cls._COLUMN_SEPARATOR.join(title.ljust(width)
                                            for title, width in zip(header, widths)).rstrip(),
                 cls._COLUMN_SEPARATOR.join("-" * width for width in widths)]
        for row in rows:
            lines.append(cls._COLUMN_SEPARATOR.join(cell.ljust(width)
                                                    for cell, width in zip(row, widths)).rstrip())
        return "\n".join(lines)

    ##########
    # Public #
    ##########

    @staticmethod
    def to_json_text(data):
        return json.dumps(data, indent=2, default=str)

    @classmethod
    def conditions(cls, reports, output_format=FORMAT_TABLE):
        if output_format == cls.FORMAT_JSON:
            return cls.to_json_text(list(map(lambda x: x.to_dict(), reports)))
        rows = []
        for report in reports:
            violation = report.get_first_violation()
            rows.append([report.get_condition(), report.get_verdict(),
                         None if violation is None else violation[1]])
        text = cls._render_table(["condition", "verdict", "first violation"], rows)
        notes = [f"note ({report.get_condition()}): {note}"
                 for report in reports for note in report.get_notes()]
        if len(notes) > 0:
            text += "\n" + "\n".join(notes)
        return text

    @classmethod
    def bound(cls, report, output_format=FORMAT_TABLE):
        if output_format == cls.FORMAT_JSON:
            return cls.to_json_text(report.to_dict())
        rows = [
            ["mode", report.get_mode()],
            ["t0", report.get_t0()],
            ["checkpoint", report.get_checkpoint()],
            ["measured", report.get_measured()],
            # An inconclusive report was never compared against its bound
            ["bound", None if report.is_inconclusive() else report.get_bound()],
            ["status", report.get_status()]
        ]
        return f"{cls._render_table(['field', 'value'], rows)}\n{report.get_message()}"

    @classmethod
    def verdict(cls, verdict, output_format=FORMAT_TABLE):
        if output_format == cls.FORMAT_JSON:
            return cls.to_json_text(verdict)
        rows = [[key, value] for key, value in verdict.items()]
        return cls._render_table(["field", "value"], rows)

    @classmethod
    def sweep(cls, results, errors):
        rows = [[seed, "ok", result] for seed, result in results.items()]
        rows.extend([seed, "error", str(error)] for seed, error in errors.items())
        rows.sort(key=lambda x: x[0])
        return cls._render_table(["seed", "status", "result"], rows)


if __name__ == "__main__":

    from tests.unit_tests.test_views.test_view_report import TestViewReport

    TestViewReport().run(True)
