#!/usr/bin/env python3
"""
Central Index - Functionality Smoke Suite
Runs every module end to end on the embedded fixtures and prints a rich summary
"""

import sys
import os
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from rich.console import Console
from rich.table import Table

console = Console()

# Test Results Tracker
results = {
    "passed": [],
    "failed": [],
    "warnings": []
}


def section(name):
    """Section banner"""
    console.print(f"\n[bold cyan]{'='*60}[/]")
    console.print(f"[bold cyan]Testing: {name}[/]")
    console.print(f"[bold cyan]{'='*60}[/]\n")


def test_imports():
    """Test 1: Module Imports"""
    section("Module Imports")

    try:
        from modules.centralindex import (
            CentralIndexAnalyzer, AnalysisConfig, ClaimVerifier,
            CitationDistribution, Cohort, Report
        )
        from modules.utils import atomic_write, console as utils_console, Theme
        from modules.debug_logger import configure_logging, log_errors

        console.print("✅ All core imports successful")
        results["passed"].append("Imports: All modules")
        return True
    except Exception as e:
        console.print(f"❌ Import failed: {e}")
        results["failed"].append(f"Imports: {e}")
        return False


def test_core_metrics():
    """Test 2: h-index, decomposition and central indexes"""
    section("Core Metrics")

    try:
        from modules.centralindex import CitationDistribution, decompose, radius_series
        d = CitationDistribution((9, 7, 6, 5, 3, 2, 1))
        profile = decompose(d)
        series = radius_series(d)

        assert profile.h == 4, f"h={profile.h}"
        assert profile.H + profile.U + profile.L == profile.N_c, "H + U + L != N_c"
        assert series.area == {1: 26, 2: 30, 3: 33}, f"area={series.area}"
        assert series.interval == {1: 14, 2: 23, 3: 33}, f"interval={series.interval}"

        console.print(f"✅ h={profile.h} U={profile.U} L={profile.L} A={series.area} I={series.interval}")
        results["passed"].append("Core metrics: worked example")
        return True
    except Exception as e:
        console.print(f"❌ Core metrics failed: {e}")
        results["failed"].append(f"Core metrics: {e}")
        return False


def test_synthetic():
    """Test 3: Synthetic profiles"""
    section("Synthetic Profiles")

    try:
        from modules.centralindex.synthetic import generate_cohort, generate_matched_pair
        from modules.centralindex.core_metrics import central_area_index

        selective, producer = generate_matched_pair(10, 2)
        wins = all(central_area_index(selective, j) > central_area_index(producer, j)
                   for j in range(1, 10))
        assert wins, "selective author should dominate every radius"

        cohort = generate_cohort(15, ["t1", "t2", "t3"], seed=42)
        console.print(f"✅ Matched pair dominance holds; cohort of {len(cohort)} authors generated")
        results["passed"].append("Synthetic: matched pair and cohort")
        return True
    except Exception as e:
        console.print(f"❌ Synthetic failed: {e}")
        results["failed"].append(f"Synthetic: {e}")
        return False


def test_ingestion():
    """Test 4: Fixtures and writers"""
    section("Ingestion")

    try:
        from modules.centralindex.io_ingest import load_fixture, parse_index_table_csv, write_index_table

        summary = load_fixture("summary")
        indexes = load_fixture("indexes")
        assert len(summary) == len(indexes) == 15, "fixtures should hold 15 authors"
        if indexes.warnings:
            results["warnings"].append(f"Ingestion: {len(indexes.warnings)} index-table warnings")

        again = parse_index_table_csv(write_index_table(indexes))
        assert len(again) == 15, "index table did not survive a round trip"

        console.print(f"✅ Fixtures loaded: epochs {', '.join(indexes.epochs)}")
        results["passed"].append("Ingestion: fixtures and index table")
        return True
    except Exception as e:
        console.print(f"❌ Ingestion failed: {e}")
        results["failed"].append(f"Ingestion: {e}")
        return False


def test_cohort_analysis():
    """Test 5: Correlation matrices, radius and regression"""
    section("Cohort Analysis")

    try:
        from modules.centralindex.io_ingest import load_fixture
        from modules.centralindex.cohort_analysis import (
            correlation_matrix, select_radius, production_impact_regression
        )

        indexes = load_fixture("indexes")
        matrix = correlation_matrix(indexes, "area", "1999", "2004")
        forward = select_radius(matrix, "forward")
        row = select_radius(matrix, "row")
        fit = production_impact_regression(indexes, "1999")

        console.print(f"   Available cells: {len(matrix.available())}/100")
        console.print(f"   Optimal radius: forward j={forward.radius}, row j={row.radius}")
        console.print(f"   Regression: N_c = {fit.slope:.3f} N_p {fit.intercept:+.3f}")

        if forward.radius != row.radius:
            results["warnings"].append("Cohort analysis: aggregators pick different radii")
        console.print("✅ Cohort analysis complete")
        results["passed"].append("Cohort analysis: matrix, radius, regression")
        return True
    except Exception as e:
        console.print(f"❌ Cohort analysis failed: {e}")
        import traceback
        traceback.print_exc()
        results["failed"].append(f"Cohort analysis: {e}")
        return False


def test_claims():
    """Test 6: Published-claim checklist"""
    section("Claim Checklist")

    try:
        from modules.centralindex import ClaimVerifier, ClaimStatus

        checks = ClaimVerifier().run()
        failed = [c.name for c in checks if c.status == ClaimStatus.FAIL]
        flagged = [c.name for c in checks if c.status == ClaimStatus.FLAGGED]
        assert not failed, f"failed claims: {', '.join(failed)}"

        for name in flagged:
            results["warnings"].append(f"Claims: FLAGGED {name}")
        console.print(f"✅ {len(checks)} claims checked, {len(flagged)} flagged")
        results["passed"].append("Claims: no FAIL")
        return True
    except Exception as e:
        console.print(f"❌ Claim checklist failed: {e}")
        results["failed"].append(f"Claims: {e}")
        return False


def test_facade():
    """Test 7: CentralIndexAnalyzer reports"""
    section("CentralIndexAnalyzer (Facade)")

    try:
        from modules.centralindex import CentralIndexAnalyzer
        from modules.centralindex.io_ingest import write_results

        analyzer = CentralIndexAnalyzer()
        cohort = analyzer.load_fixture("indexes")
        for report in (analyzer.profile_report(cohort),
                       analyzer.series_report(cohort),
                       analyzer.correlation_report(cohort, "1999", "2004"),
                       analyzer.radius_report(cohort),
                       analyzer.regression_report(cohort)):
            assert write_results(report, "csv"), f"{report.kind}: empty csv"
            assert write_results(report, "json"), f"{report.kind}: empty json"
            console.print(f"   {report.kind}: {len(report.rows)} rows")

        console.print("✅ Facade reports serialize")
        results["passed"].append("CentralIndexAnalyzer: Facade reports")
        return True
    except Exception as e:
        console.print(f"❌ CentralIndexAnalyzer failed: {e}")
        results["failed"].append(f"CentralIndexAnalyzer: {e}")
        return False


def print_summary():
    """Print test summary"""
    console.print(f"\n[bold]{'='*60}[/]")
    console.print(f"[bold]TEST SUMMARY[/]")
    console.print(f"[bold]{'='*60}[/]\n")

    table = Table(show_header=True, header_style="bold")
    table.add_column("Status", style="bold")
    table.add_column("Count", justify="right")
    table.add_column("Percentage", justify="right")

    total = len(results["passed"]) + len(results["failed"])
    pass_pct = (len(results["passed"]) / total * 100) if total > 0 else 0

    table.add_row("[green]✅ Passed[/]", str(len(results["passed"])), f"{pass_pct:.1f}%")
    table.add_row("[red]❌ Failed[/]", str(len(results["failed"])), f"{100-pass_pct:.1f}%")
    table.add_row("[yellow]⚠️  Warnings[/]", str(len(results["warnings"])), "-")

    console.print(table)

    if results["failed"]:
        console.print("\n[bold red]Failed Tests:[/]")
        for fail in results["failed"]:
            console.print(f"  • {fail}")

    if results["warnings"]:
        console.print("\n[bold yellow]Warnings:[/]")
        for warn in results["warnings"]:
            console.print(f"  • {warn}")

    return len(results["failed"]) == 0


def main():
    console.print("[bold]Central Index - Functionality Smoke Test[/]")
    console.print("[dim]Running all module checks...[/]\n")

    # Run all tests
    test_imports()
    test_core_metrics()
    test_synthetic()
    test_ingestion()
    test_cohort_analysis()
    test_claims()
    test_facade()

    # Print summary
    success = print_summary()

    sys.exit(0 if success else 1)


if __name__ == "__main__":
    main()
