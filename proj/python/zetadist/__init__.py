"""Zeta numerators of genus 1-2 curves over small prime fields, Frobenius
angles, and the statistics of normalized traces alpha_n."""

from ._zetadist import (
    Curve,
    ZetadistError,
    ZetaNumerator,
    kappa_sequence,
    kloosterman_sum,
    lambda_density,
    monte_carlo_lambda,
    run_cli,
    star_discrepancy,
)

__all__ = [
    "Curve",
    "ZetadistError",
    "ZetaNumerator",
    "kappa_sequence",
    "kloosterman_sum",
    "lambda_density",
    "monte_carlo_lambda",
    "run_cli",
    "star_discrepancy",
]

__version__ = "0.1.0"
