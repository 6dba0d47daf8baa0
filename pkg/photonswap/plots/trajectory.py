"""
Gnuplot script for <n2> trajectories
"""


def get_trajectory_script(csv_path: str, label: str, M: int) -> str:
    """Get a script that plots <n2> against t"""

    return f"""
set datafile separator ','
set title '{label}, M = {M}'
set xlabel 't'
set ylabel '<n_2>'
set yrange [0:{max(M, 1)}]
set grid
plot '{csv_path}' every ::1 using 1:2 with lines notitle
""".lstrip()
