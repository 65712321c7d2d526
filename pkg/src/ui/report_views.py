"""
Report views for the central-index CLI.
Renders Reports as rich tables on the shared console.
"""
from enum import Enum
from fractions import Fraction

from rich import box
from rich.panel import Panel
from rich.table import Table

from modules.utils import Theme, format_ratio

STATUS_STYLE = {
    "PASS": (Theme.SUCCESS, "✓"),
    "FLAGGED": (Theme.WARNING, "⚠"),
    "FAIL": (Theme.ERROR, "✗"),
}

TITLES = {
    "indexes": "INDEX PROFILES",
    "series": "CENTRAL INDEXES",
    "correlation": "CORRELATION MATRICES",
    "radius": "OPTIMAL RADIUS",
    "regression": "PRODUCTION-IMPACT REGRESSION",
    "curve": "CURVE POINTS",
    "reproduce": "PUBLISHED CLAIMS",
}


class ReportViews:
    """
    Turns Reports into rich renderables.
    """

    def get_color(self, val, good, fair):
        """Color for a score where higher is better."""
        if val >= good:
            return Theme.SUCCESS
        if val >= fair:
            return Theme.WARNING
        return Theme.ERROR

    def cell(self, value):
        if value is None:
            return "[dim white]-[/]"
        if isinstance(value, Enum):
            return value.value
        if isinstance(value, (float, Fraction)):
            return format_ratio(value)
        return str(value)

    def _table(self, report):
        table = Table(
            box=box.SIMPLE_HEAD,
            expand=False,
            padding=(0, 1),
            show_header=True,
            header_style=f"bold {Theme.PRIMARY}",
        )
        for column in report.columns:
            justify = "left" if column in ("author", "epoch", "matrix", "claim", "note") else "right"
            table.add_column(column, justify=justify)
        return table

    def _panel(self, body, report, subtitle=None):
        return Panel(
            body,
            title=f"[bold {Theme.TEXT}] {TITLES.get(report.kind, report.kind.upper())} [/]",
            subtitle=subtitle,
            border_style=Theme.BORDER,
            box=box.ROUNDED,
            padding=(0, 1),
        )

    def generic(self, report):
        table = self._table(report)
        for row in report.rows:
            table.add_row(*(self.cell(row.get(c)) for c in report.columns))
        return self._panel(table, report, f"{len(report.rows)} rows")

    def correlation(self, report):
        table = self._table(report)
        for row in report.rows:
            cells = [row["matrix"], str(row["j"])]
            for column in report.columns[2:]:
                value = row.get(column)
                if value is None:
                    cells.append("[dim white]-[/]")
                elif row["matrix"] == "difference":
                    color = Theme.SUCCESS if value >= 0 else Theme.ERROR
                    cells.append(f"[{color}]{value:+.3f}[/]")
                else:
                    cells.append(f"[{self.get_color(value, 0.95, 0.9)}]{value:.3f}[/]")
            table.add_row(*cells)

        meta = report.metadata
        subtitle = (f"{meta['from_epoch']}→{meta['to_epoch']} · min_n {meta['min_n']} · "
                    f"negative differences {meta['negative_differences']} "
                    f"(k≥j: {meta['negative_differences_forecast']})")
        return self._panel(table, report, subtitle)

    def radius(self, report):
        table = self._table(report)
        for row in report.rows:
            style = f"bold {Theme.SUCCESS}" if row["selected"] else ""
            table.add_row(str(row["radius"]), format_ratio(row["score"], 4), row["selected"], style=style)

        meta = report.metadata
        subtitle = (f"j = {meta['optimal_radius']} ({meta['aggregator']}) · "
                    f"half mean h = {meta['half_mean_h']}")
        return self._panel(table, report, subtitle)

    def claims(self, report):
        table = self._table(report)
        counts = {"PASS": 0, "FLAGGED": 0, "FAIL": 0}
        for row in report.rows:
            status = self.cell(row["status"])
            counts[status] = counts.get(status, 0) + 1
            color, mark = STATUS_STYLE.get(status, (Theme.TEXT, "?"))
            table.add_row(
                row["claim"],
                row["published"],
                row["measured"],
                f"[{color}]{mark} {status}[/]",
                f"[{Theme.DIM_TEXT}]{row['note']}[/]",
            )

        subtitle = " · ".join(f"{k} {v}" for k, v in counts.items())
        return self._panel(table, report, subtitle)

    def render(self, report):
        handlers = {
            "correlation": self.correlation,
            "radius": self.radius,
            "reproduce": self.claims,
        }
        return handlers.get(report.kind, self.generic)(report)


report_views = ReportViews()
