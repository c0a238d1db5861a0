"""
Parsing of numeric arguments shared by the CLI and the recipe reader.

Accepted real forms: plain literals (``365.256363004``), ``pi`` (optionally
``k*pi`` or ``pi*k``) and one quotient ``a/b`` of those (``1/0.26``).
Integer lists accept comma separated values and inclusive ranges ``1..6``.
"""

import math
from typing import List


def _atom(text: str) -> float:
    token = text.strip().lower()
    if not token:
        raise ValueError("empty number")
    if token in ("pi", "π"):
        return math.pi
    if "*" in token:
        left, right = token.split("*", 1)
        return _atom(left) * _atom(right)
    return float(token)


def parse_real(text) -> float:
    """Parse a real number; raises ``ValueError`` on bad input."""
    if isinstance(text, (int, float)):
        return float(text)
    token = str(text).strip()
    if token.count("/") > 1:
        raise ValueError(f"'{text}' is not a number")
    if "/" in token:
        num, den = token.split("/")
        denominator = _atom(den)
        if denominator == 0:
            raise ValueError(f"'{text}' divides by zero")
        value = _atom(num) / denominator
    else:
        value = _atom(token)
    if not math.isfinite(value):
        raise ValueError(f"'{text}' is not finite")
    return value


def parse_int_list(text) -> List[int]:
    """``"3"`` -> [3], ``"1..4"`` -> [1, 2, 3, 4], ``"1,3,5"`` -> [1, 3, 5]."""
    values: List[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise ValueError(f"empty range '{part}'")
            values.extend(range(lo_i, hi_i + 1))
        else:
            values.append(int(part))
    if not values:
        raise ValueError(f"'{text}' holds no integers")
    return values


def parse_real_list(text) -> List[float]:
    """Comma separated reals; ``a..b:step`` expands an inclusive range."""
    values: List[float] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            span, _, step_text = part.partition(":")
            lo, hi = (parse_real(p) for p in span.split("..", 1))
            step = parse_real(step_text) if step_text else 1.0
            if step <= 0 or hi < lo:
                raise ValueError(f"bad range '{part}'")
            count = int(math.floor((hi - lo) / step + 1e-9)) + 1
            values.extend(lo + i * step for i in range(count))
        else:
            values.append(parse_real(part))
    if not values:
        raise ValueError(f"'{text}' holds no numbers")
    return values
