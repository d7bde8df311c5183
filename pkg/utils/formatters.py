from models.graph import LoadReport
from models.results import FluctuationReport, PowerLawFit, SlotSummary
from stats.correlation import SlotCorrelation


def format_load_report(report: LoadReport) -> str:
    """
    Format the ingestion report printed by the ingest command.

    Args:
        report: Counts collected during ingestion
    """
    lines = [
        f"nodes:                {report.n_nodes}",
        f"edges kept:           {report.n_edges_kept}",
        f"self-loops dropped:   {report.n_self_loops_dropped}",
        f"duplicates merged:    {report.n_duplicate_edges_merged}",
        f"dangling nodes:       {report.n_dangling_nodes}",
    ]
    lines.extend(f"warning: {warning}" for warning in report.warnings)
    return "\n".join(lines)


def format_slot_summary(summary: SlotSummary) -> str:
    """One line per slot for the simulate command."""
    return (
        f"slot {summary.slot_index}: N_r={summary.n_realizations} "
        f"mu_0={summary.mu_0:.4f} mu_0(realizations)={summary.mu_0_realization:.4f} "
        f"<f_r>={summary.mean_fr:.4f} isolated={summary.isolated_fraction:.4f}"
    )


def format_fluctuations(report: FluctuationReport) -> str:
    return (
        f"sigma_0={report.sigma_0:.5f} sigma_mu={report.sigma_mu:.5f} "
        f"over {report.n_slots} slots"
    )


def format_slot_correlation(correlation: SlotCorrelation) -> str:
    return (
        f"{correlation.method.value}: C = {correlation.mean:.3f} +- {correlation.std:.3f} "
        f"({len(correlation.pairs)} slot pairs)"
    )


def format_power_law(name: str, fit: PowerLawFit) -> str:
    return (
        f"{name}: eta = {fit.exponent:.3f} +- {fit.exponent_stderr:.3f}, "
        f"B = {fit.prefactor:.3f} ({fit.n_points} points)"
    )


def format_selection_error(missing: list[str]) -> str:
    """
    Format the message for unresolved fixed-node selectors.

    Args:
        missing: Selectors that matched no node
    """
    listed = "\n".join(f"  - {name}" for name in missing)
    message = f"{len(missing)} selector(s) did not match any node (titles are exact-match):\n{listed}"
    if any("," in name for name in missing):
        message += (
            "\nnote: selectors given one per argument or as a JSON list are not split on commas; "
            "pass several nodes as separate arguments"
        )
    return message
