"""
Gnuplot script for photon-number distributions
"""
from typing import Sequence


def get_distribution_script(csv_path: str, energies: Sequence[float], M: int) -> str:
    """Get a script that draws one line per energy column"""

    series = ",\\\n     ".join(
        f"'{csv_path}' every ::1 using 1:{k + 2} with linespoints title 'E = {E:g}'"
        for k, E in enumerate(energies)
    )

    return f"""
set datafile separator ','
set title 'Photons in mode 2, M = {M}'
set xlabel 'n'
set ylabel '|c_n|^2'
set xrange [0:{M}]
set grid
plot {series}
""".lstrip()
