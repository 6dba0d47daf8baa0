"""
Gnuplot script for entanglement tables
"""


def get_entropy_script(csv_path: str, mode: str) -> str:
    """Get a script for S_ent against M (mode 'vs-M') or against E (mode 'vs-E')"""

    x_column, x_label = (1, "M") if mode == "vs-M" else (2, "E")

    return f"""
set datafile separator ','
set title 'Entanglement of H0 eigenstates'
set xlabel '{x_label}'
set ylabel 'S_ent (bits)'
set grid
plot '{csv_path}' every ::1 using {x_column}:3 with linespoints notitle
""".lstrip()
