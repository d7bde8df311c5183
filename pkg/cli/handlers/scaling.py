"""Scaling command: sigma_0 and sigma_mu against N_r across results directories."""

import argparse
import logging

import pandas as pd

from cli.decorators import EXIT_OK, handle_errors
from config.settings import Settings
from config.storage import OutputLayout
from results.repository import ResultsRepository
from stats.fitting import fit_power_law
from stats.fluctuations import fluctuations
from utils.formatters import format_power_law

logger = logging.getLogger(__name__)


def scaling_table(results_dirs: list[str]) -> pd.DataFrame:
    """One row of (n_realizations, sigma_0, sigma_mu, n_slots) per results directory."""
    rows = []
    for results_dir in results_dirs:
        repository = ResultsRepository(OutputLayout(results_dir=results_dir))
        summaries = repository.load_slot_summaries()
        node_stats = [repository.load_node_stats(summary)[0] for summary in summaries]
        report = fluctuations(summaries, node_stats)
        rows.append(
            {
                "results_dir": results_dir,
                "n_realizations": summaries[0].n_realizations,
                "sigma_0": report.sigma_0,
                "sigma_mu": report.sigma_mu,
                "n_slots": report.n_slots,
            }
        )
        logger.info(f"{results_dir}: N_r={summaries[0].n_realizations}, {report.n_slots} slots")
    return pd.DataFrame(rows).sort_values("n_realizations", kind="stable").reset_index(drop=True)


@handle_errors
def cmd_scaling(args: argparse.Namespace, settings: Settings) -> int:
    """
    Fit sigma ~ B * N_r ** eta for sigma_0 and sigma_mu.

    Args:
        args: Parsed arguments (results directories, out)
        settings: Application settings
    """
    table = scaling_table(args.results)
    fits = {
        name: fit_power_law(table["n_realizations"].tolist(), table[name].tolist())
        for name in ("sigma_0", "sigma_mu")
    }
    for name, fit in fits.items():
        print(format_power_law(name, fit))

    out = OutputLayout(results_dir=args.out)
    out.root.mkdir(parents=True, exist_ok=True)
    writer = ResultsRepository(out)
    writer.write_csv(table, out.root / "scaling.csv")
    writer.write_json({name: fit.to_dict() for name, fit in fits.items()}, out.root / "scaling_fit.json")
    return EXIT_OK
