import json
import logging
import os
import shutil
import threading
import time
from datetime import datetime
from typing import Any, Optional

from utils.error_handler import log_error
from utils.errors import DomainError, ValidationError
from utils.file_utils import atomic_write_text

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def get_app_data_folder() -> str:
    """Application folder: ``$EKZ_HOME`` or ``~/.ekz``."""
    app_folder = os.environ.get("EKZ_HOME") or os.path.join(os.path.expanduser("~"), ".ekz")
    return app_folder


def _read_json_with_retry(path: str, retries: int = 5, delay: float = 0.15) -> dict:
    """
    Read and parse a JSON file, retrying on PermissionError / OSError so that
    transient locks do not cause permanent failures.

    Raises the last exception if every attempt fails.
    """
    last_exc = None
    for attempt in range(retries):
        try:
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError:
            raise   # corrupt JSON - caller decides what to do
        except (PermissionError, OSError) as e:
            last_exc = e
            if attempt < retries - 1:
                time.sleep(delay * (attempt + 1))   # back-off: 0.15s, 0.30s, 0.45s ...
    raise last_exc


# Defaults for every recognised key.  The type of each default is the type
# accepted by ``set_value``.
DEFAULTS = {
    "max_support_width": 10_000_000,
    "etf_grid_points": 1024,
    "log_floor": 1e-300,
    "quick_length": 20_000,
    "full_length": 100_000,
    "default_seed": 1,
    "direct_convolution_limit": 50_000_000,
    "uniform_grid_rtol": 1e-9,
    "missing_tokens": ["", "NA", "NaN"],
}


# ---------------------------------------------------------------------------
# ConfigManager
# ---------------------------------------------------------------------------

class ConfigManager:
    """
    Manage toolkit settings stored as JSON.
    Singleton pattern so the library and the CLI share the same state.

    Corruption resistance
    ---------------------
    * Saves go through an atomic write-then-rename sequence (see
      ``utils.file_utils.atomic_write_text``).
    * ``load_config`` retries on ``PermissionError`` / ``OSError`` before
      treating the file as corrupted; a corrupted file is backed up and the
      defaults are used.
    """

    _instance = None
    _initialized = False

    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super(ConfigManager, cls).__new__(cls)
        return cls._instance

    def __init__(self, config_path: Optional[str] = None):
        if self._initialized:
            return

        self.config_path = config_path or os.path.join(get_app_data_folder(), "config.json")
        self.config: dict = {}
        self.has_changes: bool = False
        self.load_failed: bool = False
        self._lock = threading.RLock()

        self.load_config()
        self._initialized = True

    @classmethod
    def reset(cls, config_path: Optional[str] = None) -> "ConfigManager":
        """Drop the current instance and load a fresh one."""
        cls._instance = None
        cls._initialized = False
        return cls(config_path)

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    def load_config(self) -> dict:
        """
        Load configuration from disk.  Missing file -> empty overrides.
        """
        with self._lock:
            self.load_failed = False
            if not os.path.exists(self.config_path):
                self.config = {}
                return self.config

            try:
                loaded = _read_json_with_retry(self.config_path)
                if not isinstance(loaded, dict):
                    raise ValueError("top-level JSON value must be an object")
                self.config = loaded
            except Exception as e:
                log_error(e, f"Error loading configuration from {self.config_path}")
                self.load_failed = True
                self.config = {}

                # Back up the bad file so the user can inspect it
                try:
                    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
                    backup_path = f"{self.config_path}.corrupted_{timestamp}.bak"
                    shutil.copy2(self.config_path, backup_path)
                    logger.warning("Backed up problematic config to: %s", backup_path)
                except Exception as backup_error:
                    log_error(backup_error, "Failed to backup problematic config file")

            return self.config

    def save_config(self) -> None:
        """Synchronously write the overrides to disk."""
        with self._lock:
            text = json.dumps(self.config, indent=4, sort_keys=True) + "\n"
            atomic_write_text(self.config_path, text)
            self.has_changes = False
            logger.info("Configuration saved to %s", self.config_path)

    # ------------------------------------------------------------------
    # Generic access
    # ------------------------------------------------------------------

    def get_config_value(self, key: str, default: Any = None) -> Any:
        with self._lock:
            if key in self.config:
                return self.config[key]
            return DEFAULTS.get(key, default)

    def effective_config(self) -> dict:
        """Defaults overlaid with the stored overrides."""
        with self._lock:
            merged = dict(DEFAULTS)
            merged.update({k: v for k, v in self.config.items() if k in DEFAULTS})
            return merged

    def set_value(self, key: str, value: Any) -> bool:
        """Validate and store *value* for *key*; returns True if it changed."""
        if key not in DEFAULTS:
            raise ValidationError(f"unknown configuration key '{key}'")
        value = _coerce(key, value)
        with self._lock:
            if self.config.get(key) != value:
                self.config[key] = value
                self.has_changes = True
                return True
            return False

    # ------------------------------------------------------------------
    # Typed getters
    # ------------------------------------------------------------------

    def get_max_support_width(self) -> int:
        return int(self.get_config_value("max_support_width"))

    def get_etf_grid_points(self) -> int:
        return int(self.get_config_value("etf_grid_points"))

    def get_log_floor(self) -> float:
        return float(self.get_config_value("log_floor"))

    def get_quick_length(self) -> int:
        return int(self.get_config_value("quick_length"))

    def get_full_length(self) -> int:
        return int(self.get_config_value("full_length"))

    def get_default_seed(self) -> int:
        return int(self.get_config_value("default_seed"))

    def get_direct_convolution_limit(self) -> int:
        return int(self.get_config_value("direct_convolution_limit"))

    def get_uniform_grid_rtol(self) -> float:
        return float(self.get_config_value("uniform_grid_rtol"))

    def get_missing_tokens(self) -> list:
        return list(self.get_config_value("missing_tokens"))


def _coerce(key: str, value: Any) -> Any:
    """Convert CLI strings to the type of the default and range-check."""
    default = DEFAULTS[key]
    try:
        if isinstance(default, list):
            if isinstance(value, str):
                value = json.loads(value)
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ValueError("expected a JSON list of strings")
            return value
        if isinstance(default, int):
            value = int(value)
        else:
            value = float(value)
    except (TypeError, ValueError) as e:
        raise ValidationError(f"invalid value for '{key}': {e}") from e

    if key == "default_seed":
        if not 0 <= value < 2 ** 64:
            raise DomainError(f"'{key}' must be a 64-bit unsigned integer (got {value})")
    elif value <= 0:
        raise DomainError(f"'{key}' must be positive (got {value})")
    return value
