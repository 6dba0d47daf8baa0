"""
Command-line front end

Every command builds a table (header plus rows) and renders it as CSV or
JSON with the same numbers; --plot adds a gnuplot script that reads the CSV.
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .config import OUTPUT_FORMATS, Config
from .designs import DesignRegistry
from .entanglement import (
    ProbabilityDistribution,
    energy_index,
    entropy_rises,
    entropy_vs_E,
    entropy_vs_M,
    peak_count,
)
from .errors import DomainError, VerificationError
from .evolution import cat_branches, cat_from_coherent, default_time_grid, n2_trajectory, sort_cascade, swap_table
from .fockspace import fock_state
from .hamiltonian import HamiltonianSpec, spec_to_json
from .krawtchouk import Coupling, coefficient_matrix
from .plots import get_distribution_script, get_entropy_script, get_trajectory_script
from .utils import complex_pair, parse_complex, render_csv, render_json, setup_logging, write_output
from .verify import Verifier


logger = logging.getLogger(__name__)

COMMANDS = ["spectrum", "distribution", "entropy", "evolve", "cat", "sort", "swaps", "verify"]
ENTROPY_MODES = ["vs-M", "vs-E"]

Row = List[Any]


@dataclass
class Table:
    """Rendered output of a command"""

    header: List[str]
    rows: List[Row]
    extra: Dict[str, Any] = field(default_factory=dict)
    plot: Optional[Callable[[str], str]] = None


@dataclass
class RunConfig:
    """Validated parameters of one CLI run"""

    command: str
    gamma: complex
    tau: float
    alpha: complex
    epsilon: float
    samples: int
    t_max: Optional[float]
    output_format: str
    precision: int = 17
    max_photons: int = 60
    M: Optional[int] = None
    N: Optional[int] = None
    energies: List[float] = field(default_factory=list)
    initial: Optional[Tuple[int, int]] = None
    amplitudes: Optional[Dict[int, complex]] = None
    design: str = "evenswap"
    half: bool = False
    mode: str = "vs-E"
    fixed_energy: Optional[float] = None
    m_min: int = 1
    m_max: int = 30
    M_max: int = 40
    perturb: bool = False
    out: Optional[str] = None
    plot: Optional[str] = None
    save_design: Optional[str] = None

    @property
    def coupling(self) -> Coupling:
        return Coupling(self.gamma)

    @property
    def design_name(self) -> str:
        """Registry name, folding --N and --half into pswap designs"""
        name = self.design
        if name == "pswap" and self.half:
            name = "pswap-half"
        if name in ("pswap", "pswap-half"):
            name = f"{name}:{self.N if self.N is not None else 1}"
        return name

    def validate(self):
        """
        Check per-command required fields and numeric ranges

        Raises:
            DomainError: On the first violated requirement
        """
        if self.gamma == 0:
            raise DomainError("gamma must be nonzero")
        if not self.tau > 0:
            raise DomainError(f"tau must be positive, got {self.tau}")
        if self.samples < 1:
            raise DomainError(f"samples must be positive, got {self.samples}")
        if not 0 < self.epsilon < 1:
            raise DomainError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        for name in ("M", "N"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise DomainError(f"{name} must be non-negative, got {value}")
        if self.t_max is not None and self.t_max < 0:
            raise DomainError(f"t-max must be non-negative, got {self.t_max}")

        needs_M = self.command in ("spectrum", "distribution") or (
            self.command == "entropy" and self.mode == "vs-E"
        )
        if needs_M and self.M is None:
            raise DomainError(f"Command '{self.command}' requires --M")
        if self.command == "evolve" and self.M is None and self.initial is None:
            raise DomainError("Command 'evolve' requires --M or --initial")
        if self.command == "sort" and self.M is None and self.amplitudes is None:
            raise DomainError("Command 'sort' requires --M or --amplitudes")
        if self.command in ("entropy", "swaps") and not 0 <= self.m_min <= self.m_max:
            raise DomainError(f"Invalid photon-number range {self.m_min}..{self.m_max}")
        if self.M_max < 0:
            raise DomainError(f"M-max must be non-negative, got {self.M_max}")
        if self.plot and not self.out:
            raise DomainError("--plot needs --out so the script can reference the data file")

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: Config) -> "RunConfig":
        """Merge command-line flags over the configuration file"""
        gamma = config.gamma
        if args.gamma_re is not None or args.gamma_im is not None:
            gamma = complex(
                args.gamma_re if args.gamma_re is not None else gamma.real,
                args.gamma_im if args.gamma_im is not None else gamma.imag,
            )
        command = "verify" if args.verify else args.command
        if command is None:
            raise DomainError(f"A command is required: {', '.join(COMMANDS)}")
        tau = args.tau if args.tau is not None else config.tau

        run = cls(
            command=command,
            gamma=gamma,
            tau=tau,
            alpha=complex(args.alpha_re, args.alpha_im),
            epsilon=args.epsilon if args.epsilon is not None else config.epsilon,
            samples=args.samples if args.samples is not None else config.samples,
            # trajectory.t_max is stored in units of tau
            t_max=args.t_max if args.t_max is not None else config.t_max * tau,
            output_format=args.format or config.output_format,
            precision=config.precision,
            max_photons=config.max_photons,
            M=args.M,
            N=args.N,
            energies=list(args.energy or []),
            initial=parse_initial(args.initial) if args.initial else None,
            amplitudes=parse_amplitudes(args.amplitudes) if args.amplitudes else None,
            design=args.design,
            half=args.half,
            mode=args.mode,
            fixed_energy=args.fixed_energy,
            m_min=args.m_min,
            m_max=args.m_max,
            M_max=args.M_max,
            perturb=args.perturb,
            out=args.out,
            plot=args.plot,
            save_design=args.save_design,
        )
        run.validate()
        return run


def parse_initial(text: str) -> Tuple[int, int]:
    """Parse 'm,n' into the Fock state |m, n>"""
    try:
        m, n = (int(v) for v in text.split(","))
    except ValueError as e:
        raise DomainError(f"--initial expects 'm,n', got '{text}'") from e
    if m < 0 or n < 0:
        raise DomainError(f"--initial photon numbers must be non-negative, got '{text}'")
    return m, n


def parse_amplitudes(text: str) -> Dict[int, complex]:
    """Parse 'n:value,...' into mode-1 amplitudes by photon number"""
    amplitudes: Dict[int, complex] = {}
    for item in text.split(","):
        try:
            n, value = item.split(":")
            amplitudes[int(n)] = amplitudes.get(int(n), 0j) + parse_complex(value)
        except ValueError as e:
            raise DomainError(f"--amplitudes expects 'n:value,...', got '{item}'") from e
    return amplitudes


def _design(run: RunConfig) -> HamiltonianSpec:
    """Resolve --design and optionally save the result for later @file use"""
    spec = DesignRegistry(coupling=run.coupling, tau=run.tau).get(run.design_name)
    if run.save_design:
        write_output(spec_to_json(spec) + "\n", run.save_design)
        logger.info(f"Design written to {run.save_design}")
    return spec


def cmd_spectrum(run: RunConfig) -> Table:
    """x, E_x and the real coefficients c^M_0..c^M_M of each eigenvector"""
    M = run.M
    C = coefficient_matrix(M)
    g = run.coupling.magnitude
    header = ["x", "E"] + [f"c_{n}" for n in range(M + 1)]
    rows = [[x, float((2 * x - M) * g)] + [float(v) for v in C[:, x]] for x in range(M + 1)]
    return Table(header, rows, {"M": M, "phase": run.coupling.phase})


def cmd_distribution(run: RunConfig) -> Table:
    """|c^M_n(E)|^2 columns for each requested energy, then a peaks row"""
    M = run.M
    energies = run.energies or [M * run.coupling.magnitude]
    indices = [energy_index(M, E, run.coupling) for E in energies]
    C = coefficient_matrix(M)

    columns = [C[:, x] ** 2 for x in indices]
    peaks = [peak_count(ProbabilityDistribution(w)) for w in columns]
    header = ["n"] + [f"E={E:g}" for E in energies]
    rows: List[Row] = [[n] + [float(w[n]) for w in columns] for n in range(M + 1)]
    rows.append(["peaks"] + peaks)
    for E, count in zip(energies, peaks):
        logger.info(f"M={M}, E={E:g}: {count} peak(s)")
    return Table(
        header,
        rows,
        {"M": M, "peaks": dict(zip(header[1:], peaks))},
        plot=lambda path: get_distribution_script(path, energies, M),
    )


def cmd_entropy(run: RunConfig) -> Table:
    """S_ent against E for one M, or against M for a fixed energy or the top energy"""
    header = ["M", "E", "s_ent"]
    extra: Dict[str, Any] = {"mode": run.mode}
    if run.mode == "vs-E":
        reports = entropy_vs_E(run.M, run.coupling)
        extra["rises"] = [list(pair) for pair in entropy_rises(reports)]
    else:
        rule = "max" if run.fixed_energy is None else run.fixed_energy
        table = entropy_vs_M(rule, range(run.m_min, run.m_max + 1), run.coupling)
        reports = table.reports
        extra["skipped"] = table.skipped
    rows = [[r.M, float(r.E), float(r.s_ent)] for r in reports]
    return Table(header, rows, extra, plot=lambda path: get_entropy_script(path, run.mode))


def cmd_evolve(run: RunConfig) -> Table:
    """<n2>(t) for a designed Hamiltonian from a Fock input"""
    spec = _design(run)
    if run.initial is not None:
        m, n = run.initial
        initial = fock_state(m + n, n)
    else:
        initial = fock_state(run.M, 0)
    M = initial.total_photons

    grid = default_time_grid(run.tau, run.samples, run.t_max)
    samples = n2_trajectory(spec, initial, grid)
    rows = [[float(s.t), float(s.n2_expectation)] for s in samples]
    label = spec.label or run.design_name
    return Table(
        ["t", "n2_expectation"],
        rows,
        {"design": run.design_name, "M": M, "hamiltonian": json.loads(spec_to_json(spec))},
        plot=lambda path: get_trajectory_script(path, label, M),
    )


def cmd_cat(run: RunConfig) -> Table:
    """Block amplitudes of the evolved coherent input, then a fidelity row"""
    result = cat_from_coherent(run.alpha, run.coupling, run.tau, run.epsilon, run.max_photons)
    branches = cat_branches(result)
    header = ["M", "input_re", "input_im", "mode2_re", "mode2_im", "mode1_re", "mode1_im"]
    rows: List[Row] = []
    for M, amplitude in enumerate(result.truncation.amplitudes):
        rows.append([M] + complex_pair(amplitude) + complex_pair(branches["mode2"][M]) + complex_pair(branches["mode1"][M]))
    rows.append(["fidelity", float(result.fidelity), "", "", "", "", ""])
    return Table(
        header,
        rows,
        {
            "cutoff": result.truncation.cutoff,
            "discarded_weight": result.truncation.discarded_weight,
            "fidelity": result.fidelity,
            "mode2_weight": branches["mode2_weight"],
            "mode1_weight": branches["mode1_weight"],
        },
    )


def cmd_sort(run: RunConfig) -> Table:
    """Final four-mode amplitudes of the sorting cascade"""
    amplitudes = run.amplitudes if run.amplitudes is not None else {run.M: 1.0}
    state = sort_cascade(amplitudes, run.coupling, run.tau)
    rows = [list(occupation) + complex_pair(a) for occupation, a in state.support().items()]
    return Table(["n1", "n2", "n3", "n4", "re", "im"], rows)


def cmd_swaps(run: RunConfig) -> Table:
    """Swap and stay probabilities of |M,0> at tau for a range of M"""
    spec = _design(run)
    table = swap_table(spec, range(run.m_min, run.m_max + 1))
    rows = [[r.M, r.swap_probability, r.stay_probability] + complex_pair(r.stay_phase) for r in table]
    return Table(
        ["M", "swap", "stay", "stay_re", "stay_im"],
        rows,
        {"design": run.design_name, "hamiltonian": json.loads(spec_to_json(spec))},
    )


def cmd_verify(run: RunConfig, config: Optional[Config] = None) -> int:
    """Run the oracle cross-checks; 0 when everything passes, 2 otherwise"""
    verifier = Verifier(run.coupling, run.tau, config=config)
    return 0 if verifier.run(run.M_max, perturb=run.perturb) else 2


HANDLERS: Dict[str, Callable[[RunConfig], Table]] = {
    "spectrum": cmd_spectrum,
    "distribution": cmd_distribution,
    "entropy": cmd_entropy,
    "evolve": cmd_evolve,
    "cat": cmd_cat,
    "sort": cmd_sort,
    "swaps": cmd_swaps,
}


def render(table: Table, run: RunConfig) -> str:
    """Render a table in the requested format"""
    if run.output_format == "json":
        payload = {"command": run.command, "columns": table.header, "rows": table.rows}
        payload.update(table.extra)
        return render_json(payload)
    return render_csv(table.header, table.rows, run.precision)


def dispatch(run: RunConfig, config: Optional[Config] = None) -> int:
    """Run one command and write its output"""
    if run.command == "verify":
        return cmd_verify(run, config)

    table = HANDLERS[run.command](run)
    write_output(render(table, run), run.out)
    if run.plot:
        if table.plot is None:
            logger.warning(f"Command '{run.command}' has no plot script")
        else:
            write_output(table.plot(run.out), run.plot)
            logger.info(f"Plot script written to {run.plot}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser"""
    parser = argparse.ArgumentParser(
        description="photonswap - exact two-mode photon simulations with Krawtchouk polynomials"
    )
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="Command to run")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=str, default="config.json", help="Path to configuration file (default: config.json)")

    physics = parser.add_argument_group("physics")
    physics.add_argument("--M", type=int, help="Total photon number")
    physics.add_argument("--N", type=int, help="Protected photon number of the pswap design")
    physics.add_argument("--gamma-re", type=float, help="Real part of the coupling gamma")
    physics.add_argument("--gamma-im", type=float, help="Imaginary part of the coupling gamma")
    physics.add_argument("--tau", type=float, help="Design time of the swap Hamiltonians")
    physics.add_argument("--alpha-re", type=float, default=2.0, help="Real part of the coherent amplitude (default: 2)")
    physics.add_argument("--alpha-im", type=float, default=0.0, help="Imaginary part of the coherent amplitude")
    physics.add_argument("--epsilon", type=float, help="Largest discarded coherent weight")
    physics.add_argument("--energy", type=float, action="append", help="Eigenvalue E (repeatable)")
    physics.add_argument("--initial", type=str, help="Initial Fock state 'm,n'")
    physics.add_argument("--amplitudes", type=str, help="Sorter input 'n:value,...' (e.g. '1:0.6,2:0.8')")

    designs = parser.add_argument_group("designs")
    designs.add_argument(
        "--design",
        type=str,
        default="evenswap",
        help=f"Hamiltonian: {', '.join(DesignRegistry().list_designs())} (pswap takes --N)",
    )
    designs.add_argument("--half", action="store_true", help="Use the halved pswap")
    designs.add_argument("--save-design", type=str, help="Write the resolved Hamiltonian as JSON (reload with --design @PATH)")

    grids = parser.add_argument_group("grids")
    grids.add_argument("--t-max", type=float, help="End of the time grid")
    grids.add_argument("--samples", type=int, help="Number of time samples")
    grids.add_argument("--mode", type=str, choices=ENTROPY_MODES, default="vs-E", help="Entropy table (default: vs-E)")
    grids.add_argument("--fixed-energy", type=float, help="Energy held fixed in the vs-M table (default: E = M|gamma|)")
    grids.add_argument("--m-min", type=int, default=1, help="Smallest M of vs-M and swap tables (default: 1)")
    grids.add_argument("--m-max", type=int, default=30, help="Largest M of vs-M and swap tables (default: 30)")

    output = parser.add_argument_group("output")
    output.add_argument("--format", type=str, choices=list(OUTPUT_FORMATS), help="Output format (default: csv)")
    output.add_argument("--out", type=str, help="Output file (default: stdout)")
    output.add_argument("--plot", type=str, help="Also write a gnuplot script to this path")

    checks = parser.add_argument_group("verification")
    checks.add_argument("--verify", action="store_true", help="Cross-check against the dense eigensolver")
    checks.add_argument("--M-max", type=int, default=40, help="Largest M to verify (default: 40)")
    checks.add_argument("--perturb", action="store_true", help="Perturb the oracle input (negative control)")

    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose output")
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments and run; returns the exit code"""
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose)

    config = Config(args.config)
    is_valid, errors = config.validate()
    if not is_valid:
        print("Configuration validation failed:", file=sys.stderr)
        for error in errors:
            print(f"  - {error}", file=sys.stderr)
        print(f"\nPlease fix these errors in {args.config}", file=sys.stderr)
        return 1

    try:
        run = RunConfig.from_args(args, config)
        return dispatch(run, config)
    except DomainError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except VerificationError as e:
        print(f"Verification failed: {e}", file=sys.stderr)
        return 2


def main():
    """Main entry point for photonswap"""
    verbose = "--verbose" in sys.argv or "-v" in sys.argv
    try:
        sys.exit(run_cli())
    except KeyboardInterrupt:
        print("\nInterrupted by user")
        sys.exit(130)
    except Exception as e:
        print(f"Fatal error: {e}", file=sys.stderr)
        if verbose:
            import traceback
            traceback.print_exc()
        sys.exit(1)
