from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from utils.errors import DataError, DomainError


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Real samples on a uniform grid with an explicit missing mask.

    ``values`` holds NaN at every missing position so arrays can be passed
    straight to numpy; ``missing`` is the authoritative mask.  ``time_step``
    is informational only (filtering is index based).
    """

    values: np.ndarray
    missing: np.ndarray
    time_step: float = 1.0
    origin: int = 0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1)
        missing = np.array(self.missing, dtype=bool).reshape(-1)

        if values.size < 1:
            raise DataError("a time series needs at least one sample")
        if missing.size != values.size:
            raise DataError(
                f"values and missing mask differ in length ({values.size} vs {missing.size})"
            )
        if not np.all(np.isfinite(values[~missing])):
            raise DataError("observed values must be finite")
        if not (np.isfinite(self.time_step) and self.time_step > 0):
            raise DomainError(f"time step must be a positive real (got {self.time_step})")

        values[missing] = np.nan
        values.setflags(write=False)
        missing.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "missing", missing)

    # ── Constructors ─────────────────────────────────────────────────────

    @classmethod
    def from_values(cls, values: Sequence[float], time_step: float = 1.0, origin: int = 0,
                    label: str = "") -> "TimeSeries":
        """Build a series treating NaN entries as missing."""
        arr = np.asarray(values, dtype=np.float64).reshape(-1)
        return cls(arr, np.isnan(arr), time_step=time_step, origin=origin, label=label)

    # ── Queries ──────────────────────────────────────────────────────────

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def n_missing(self) -> int:
        return int(np.count_nonzero(self.missing))

    @property
    def fully_observed(self) -> bool:
        return not self.missing.any()

    def observed_values(self) -> np.ndarray:
        return self.values[~self.missing]

    def with_values(self, values: np.ndarray, missing: Optional[np.ndarray] = None,
                    label: Optional[str] = None) -> "TimeSeries":
        """Same grid, new samples."""
        if missing is None:
            missing = np.isnan(values)
        return TimeSeries(values, missing, time_step=self.time_step, origin=self.origin,
                          label=self.label if label is None else label)

    def longest_observed_run(self) -> Tuple[int, int]:
        """``(start, stop)`` of the longest contiguous fully observed segment.

        Ties go to the earliest run; ``(0, 0)`` when every sample is missing.
        """
        observed = ~self.missing
        if not observed.any():
            return 0, 0
        padded = np.concatenate(([False], observed, [False])).astype(np.int8)
        edges = np.flatnonzero(np.diff(padded))
        starts, stops = edges[0::2], edges[1::2]
        best = int(np.argmax(stops - starts))
        return int(starts[best]), int(stops[best])

    def interior(self) -> "TimeSeries":
        """The longest fully observed segment as its own series."""
        start, stop = self.longest_observed_run()
        if stop - start == 0:
            raise DataError("series has no observed samples")
        return TimeSeries(self.values[start:stop], self.missing[start:stop],
                          time_step=self.time_step, origin=self.origin + start, label=self.label)
