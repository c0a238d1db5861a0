# Seeded generators, recipes and experiment runs
from simulate.experiment import ExperimentReport, FilteredResult, run_experiment, synthesize
from simulate.generators import Sinusoid, WhiteNoise, gen_sinusoid, gen_white_noise
from simulate.recipe import SimulationRecipe, figure_recipe, load_recipe, parse_recipe

__all__ = [
    "ExperimentReport",
    "FilteredResult",
    "run_experiment",
    "synthesize",
    "Sinusoid",
    "WhiteNoise",
    "gen_sinusoid",
    "gen_white_noise",
    "SimulationRecipe",
    "figure_recipe",
    "load_recipe",
    "parse_recipe",
]
