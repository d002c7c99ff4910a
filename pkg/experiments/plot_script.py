"""
experiments/plot_script.py – gnuplot template for sweep CSVs.

``smooth unique`` averages rows sharing a sweep value, so the script plots
mean secrecy per scheme straight from the per-trial CSV.
"""
from __future__ import annotations

from typing import Sequence

AXIS_LABELS = {
    "power": "Transmit power P_t (dBm)",
    "rhs-size": "Number of RHS elements M",
    "rf-chains": "Number of RF chains R",
    "rician": "Rician factor K",
}

PLOT_TEMPLATE = """\
set datafile separator ","
set key top left
set grid
set xlabel "{xlabel}"
set ylabel "Secrecy rate (bits/s/Hz)"
set terminal pngcairo size 800,600
set output "{output}"
plot {series}
"""

SERIES_TEMPLATE = (
    '"{csv}" every ::1 using 2:(strcol(4) eq "{scheme}" ? $5 : NaN) '
    'smooth unique with linespoints title "{scheme}"'
)


def build_plot_script(csv_path: str, variable: str, schemes: Sequence[str], output: str) -> str:
    """Return a gnuplot script plotting mean secrecy for each scheme."""
    series = ", \\\n     ".join(SERIES_TEMPLATE.format(csv=csv_path, scheme=s) for s in schemes)
    return PLOT_TEMPLATE.format(
        xlabel=AXIS_LABELS.get(variable, variable), output=output, series=series
    )
