"""
Suite Loader for the benchmark harness.

Benchmark suites live in a YAML file; each suite names a tournament
size, a number of terminal pairs, a trial count, a base seed and
optional overrides of the linker constants.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..resources.config import DEFAULT_CONFIG
from .errors import InputError

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ("n", "k", "trials", "seed")


class SuiteLoader:
    """
    Loads and caches benchmark suites from a YAML file.
    """

    def __init__(self, suites_file: Optional[str] = None):
        """
        Initialize the SuiteLoader.

        Args:
            suites_file: Path to the YAML suites file. If None, uses the
                         default from config relative to the resources directory.
        """
        if suites_file is None:
            resources_dir = Path(__file__).parent.parent / "resources"
            suites_file = resources_dir / DEFAULT_CONFIG.bench.suites_file

        self.suites_path = Path(suites_file)
        self._suites_cache: Optional[Dict[str, Any]] = None

    def _load_suites(self) -> Dict[str, Any]:
        """
        Load suites from the YAML file.

        Raises:
            FileNotFoundError: If the suites file doesn't exist.
            yaml.YAMLError: If YAML parsing fails.
        """
        if self._suites_cache is not None:
            return self._suites_cache

        if not self.suites_path.exists():
            raise FileNotFoundError(f"Suites file not found: {self.suites_path}")

        logger.info(f"Loading suites from {self.suites_path}")

        with open(self.suites_path, "r", encoding="utf-8") as f:
            self._suites_cache = yaml.safe_load(f) or {}

        return self._suites_cache

    def get_suite(self, name: str) -> Dict[str, Any]:
        """
        Get a suite definition by name.

        Raises:
            InputError: If the suite doesn't exist or lacks a required key.
        """
        suites = self._load_suites()
        if name not in suites:
            raise InputError(f"Suite '{name}' not found. Available suites: {self.list_suites()}")

        suite = suites[name]
        missing = [key for key in REQUIRED_KEYS if key not in suite]
        if missing:
            raise InputError(f"Suite '{name}' is missing {missing}")
        return suite

    def reload(self) -> None:
        """Clear the cache; the file is read again on next access."""
        self._suites_cache = None
        logger.info("Suite cache cleared, will reload on next access")

    def list_suites(self) -> List[str]:
        suites = self._load_suites()
        return [name for name, data in suites.items() if isinstance(data, dict)]


# Default loader instance
_default_loader: Optional[SuiteLoader] = None


def get_suite_loader() -> SuiteLoader:
    """
    Get the default SuiteLoader instance.

    Creates the loader on first call (singleton pattern).
    """
    global _default_loader
    if _default_loader is None:
        _default_loader = SuiteLoader()
    return _default_loader
