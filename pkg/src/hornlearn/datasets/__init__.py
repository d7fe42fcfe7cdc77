from .kinship import build_kinship, gen_kinship
from .printer import build_printer, gen_printer, self_check
from .robot import build_robot, gen_robot
from .strings import build_strings, gen_strings, intended_solutions, load_strings
from .taskdir import load_problem, write_problem

__all__ = [
    "build_kinship", "gen_kinship",
    "build_printer", "gen_printer", "self_check",
    "build_robot", "gen_robot",
    "build_strings", "gen_strings", "intended_solutions", "load_strings",
    "load_problem", "write_problem",
]
