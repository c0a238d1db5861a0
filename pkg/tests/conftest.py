import logging
import os
import sys

import numpy as np
import pytest

# Add src to path so the packages import the same way main.py sees them
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "src")))

from config.config_manager import ConfigManager  # noqa: E402
from ekz.timeseries import TimeSeries  # noqa: E402
from simulate.generators import gen_white_noise  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Every test gets its own empty settings folder."""
    home = tmp_path / "ekz_home"
    monkeypatch.setenv("EKZ_HOME", str(home))
    manager = ConfigManager.reset()
    yield manager
    ConfigManager.reset()

    # drop handlers bound to this test's captured stderr
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_ekz_handler", False):
            root.removeHandler(handler)
            handler.close()
    sys.excepthook = sys.__excepthook__


@pytest.fixture
def noise_2000() -> TimeSeries:
    return gen_white_noise(2000, 1.0, seed=20240501)


@pytest.fixture
def write_series():
    """Writes a single-column CSV (NaN as NA) and returns its path."""

    def write(path, values, header="value"):
        lines = [header]
        lines += ["NA" if np.isnan(v) else repr(float(v)) for v in values]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(path)

    return write
