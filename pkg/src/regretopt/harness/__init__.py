"""Instance generation, file formats, brute-force references, experiments, CLI."""

from .brute_force import brute_force_lb_star, brute_force_opt, enumerate_paths
from .generators import GeneratorSpec, gen_instance
from .io import parse_dimacs, perturb_intervals, read_native, write_native
from .experiments import run_bb_experiment, run_lb_experiment, write_csv

__all__ = [
    "GeneratorSpec",
    "gen_instance",
    "parse_dimacs",
    "perturb_intervals",
    "read_native",
    "write_native",
    "brute_force_opt",
    "brute_force_lb_star",
    "enumerate_paths",
    "run_lb_experiment",
    "run_bb_experiment",
    "write_csv",
]
