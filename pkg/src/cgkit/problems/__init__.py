"""Built-in objectives: a test-function suite, the heat conduction problem and
image denoising."""

from . import testfuncs
from .entry import ProblemEntry
from .heat import REFERENCE_F, REFERENCE_X, heat_objective, heat_problem
from .imaging import (
    DenoiseSpec,
    ImageGray,
    add_gaussian_noise,
    denoise_objective,
    rmse,
    synthetic_image,
)

_BUILDERS = {
    "ROSENBR": testfuncs.rosenbrock,
    "SROSENBR": testfuncs.srosenbrock,
    "WOODS": testfuncs.woods,
    "POWELLSG": testfuncs.powell_singular,
    "TRIDIA": testfuncs.tridia,
    "DIXMAANA": testfuncs.dixmaana,
    "ENGVAL1": testfuncs.engval1,
    "LIARWHD": testfuncs.liarwhd,
    "EDENSCH": testfuncs.edensch,
    "QUARTC": testfuncs.quartc,
    "COSINE": testfuncs.cosine,
    "DQDRTIC": testfuncs.dqdrtic,
    "NONDIA": testfuncs.nondia,
    "BEALE": testfuncs.beale,
    "HIMMELBG": testfuncs.himmelbg,
    "HEAT": heat_problem,
}

_ALIASES = {"ROSENBROCK": "ROSENBR", "HEAT-CONDUCTION": "HEAT"}

STRICTLY_CONVEX = ("TRIDIA", "DQDRTIC")


def problem_names():
    return list(_BUILDERS)


def get_problem(name):
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    try:
        return _BUILDERS[key]()
    except KeyError:
        raise KeyError(f"unknown problem {name!r}") from None


def catalog():
    """Every built-in problem at its default dimension, in a fixed order."""
    return [build() for build in _BUILDERS.values()]


__all__ = [
    "DenoiseSpec",
    "ImageGray",
    "ProblemEntry",
    "REFERENCE_F",
    "REFERENCE_X",
    "STRICTLY_CONVEX",
    "add_gaussian_noise",
    "catalog",
    "denoise_objective",
    "get_problem",
    "heat_objective",
    "heat_problem",
    "problem_names",
    "rmse",
    "synthetic_image",
]
