"""
recipe.py
─────────
Declarative simulation recipes.

Recipe files are flat ``key = value`` lines; ``#`` starts a comment, blank
lines are ignored and keys may repeat where noted:

    name      = figure4                 # optional label
    n         = 20000                   # series length, >= 2
    seed      = 1                       # 64-bit unsigned integer
    noise     = 1.0                     # white noise σ          (repeatable)
    sinusoid  = 8, 1.0, 0.0             # period, amplitude[, phase] (repeatable)
    filter    = 2, 1                    # m_r, k applied to the series (repeatable)
    reference = 3, 1                    # m_r, k for comparison curves only (repeatable)
    boundary  = missing                 # missing | renorm (applies to all filters)

Reals accept ``pi`` and one quotient such as ``1/0.26``.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ekz.window import BoundaryPolicy, FilterSpec
from simulate.generators import Component, Sinusoid, WhiteNoise, check_seed
from utils.errors import DomainError, EKZError, FileError, ParseError
from utils.numbers import parse_real

logger = logging.getLogger(__name__)

_SINGLE_KEYS = {"name", "n", "seed", "boundary"}
_REPEATED_KEYS = {"noise", "sinusoid", "filter", "reference"}


@dataclass(frozen=True)
class SimulationRecipe:
    n: int
    seed: int
    components: Tuple[Component, ...]
    filters: Tuple[FilterSpec, ...] = ()
    references: Tuple[FilterSpec, ...] = ()
    name: str = "experiment"

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 2:
            raise DomainError(f"recipe length n must be an integer >= 2 (got {self.n!r})")
        check_seed(self.seed)
        if not self.components:
            raise DomainError("a recipe needs at least one signal component")
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "filters", tuple(self.filters))
        object.__setattr__(self, "references", tuple(self.references))

    def with_overrides(self, n: Optional[int] = None, seed: Optional[int] = None) -> "SimulationRecipe":
        return SimulationRecipe(
            n=self.n if n is None else n,
            seed=self.seed if seed is None else seed,
            components=self.components,
            filters=self.filters,
            references=self.references,
            name=self.name,
        )


# ── Parsing ──────────────────────────────────────────────────────────────────

def _numbers(value: str, lo: int, hi: int) -> List[float]:
    parts = [p.strip() for p in value.split(",")]
    if not lo <= len(parts) <= hi:
        expected = f"{lo}" if lo == hi else f"{lo} to {hi}"
        raise ValueError(f"expected {expected} comma separated numbers, got {len(parts)}")
    return [parse_real(p) for p in parts]


def _integer(value: str) -> int:
    token = value.strip()
    if token.isdigit():
        return int(token)      # exact for seeds above 2**53
    number = parse_real(token)
    if number != int(number):
        raise ValueError(f"'{value}' is not an integer")
    return int(number)


def parse_recipe(text: str, path: Optional[str] = None) -> SimulationRecipe:
    """Parse recipe *text*; errors carry the 1-based line number."""
    single = {}
    components: List[Component] = []
    pairs = {"filter": [], "reference": []}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got '{line}'", path, line_no)
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()

        try:
            if key in _SINGLE_KEYS:
                if key in single:
                    raise ValueError(f"'{key}' given more than once")
                if key == "name":
                    single[key] = value
                elif key == "boundary":
                    single[key] = BoundaryPolicy.from_name(value)
                elif key == "seed":
                    single[key] = check_seed(_integer(value))
                else:
                    single[key] = _integer(value)
            elif key == "noise":
                (sigma,) = _numbers(value, 1, 1)
                components.append(WhiteNoise(sigma))
            elif key == "sinusoid":
                components.append(Sinusoid(*_numbers(value, 2, 3)))
            elif key in pairs:
                m_r, k = _numbers(value, 2, 2)
                if k != int(k):
                    raise ValueError(f"iteration count '{k}' is not an integer")
                pairs[key].append((m_r, int(k), line_no))
            else:
                known = ", ".join(sorted(_SINGLE_KEYS | _REPEATED_KEYS))
                raise ValueError(f"unknown key '{key}' (known: {known})")
        except ParseError:
            raise
        except (ValueError, EKZError) as e:
            message = e.message if isinstance(e, EKZError) else str(e)
            raise ParseError(message, path, line_no) from e

    for key in ("n", "seed"):
        if key not in single:
            raise ParseError(f"missing required key '{key}'", path)

    boundary = single.get("boundary", BoundaryPolicy.MISSING)
    specs = {}
    for key, entries in pairs.items():
        specs[key] = []
        for m_r, k, line_no in entries:
            try:
                specs[key].append(FilterSpec(m_r, k, boundary))
            except EKZError as e:
                raise ParseError(e.message, path, line_no) from e

    try:
        return SimulationRecipe(
            n=single["n"],
            seed=single["seed"],
            components=tuple(components),
            filters=tuple(specs["filter"]),
            references=tuple(specs["reference"]),
            name=single.get("name", "experiment"),
        )
    except EKZError as e:
        raise ParseError(e.message, path) from e


def load_recipe(path: str) -> SimulationRecipe:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise FileError(f"cannot read recipe: {e.strerror or e}", path) from e
    recipe = parse_recipe(text, path)
    logger.info("Loaded recipe '%s' from %s", recipe.name, path)
    return recipe


# ── Figure presets ───────────────────────────────────────────────────────────

def figure_recipe(figure: int, n: int, seed: int) -> SimulationRecipe:
    """White-noise experiments behind the two simulation figures.

    4: EKZ(2,1) and EKZ(2,2), with KZ(3,1) as the nearest KZ comparison.
    5: EKZ(1/0.26,1), with KZ(3,1) and KZ(5,1) as comparisons.
    """
    noise = (WhiteNoise(1.0),)
    if figure == 4:
        return SimulationRecipe(n, seed, noise,
                                filters=(FilterSpec(2, 1), FilterSpec(2, 2)),
                                references=(FilterSpec(3, 1),),
                                name="figure4")
    if figure == 5:
        return SimulationRecipe(n, seed, noise,
                                filters=(FilterSpec(1 / 0.26, 1),),
                                references=(FilterSpec(3, 1), FilterSpec(5, 1)),
                                name="figure5")
    raise DomainError(f"no simulation preset for figure {figure} (use 4 or 5)")
