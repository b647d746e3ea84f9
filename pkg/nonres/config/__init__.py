# nonres/config/__init__.py
from pathlib import Path
import os

from dotenv import load_dotenv

# Config directory may be redirected; the .env inside it is loaded first.
CONFIG_DIR = Path(os.getenv("NONRES_CONFIG_DIR", ".")).expanduser()
ENV_FILE = CONFIG_DIR / ".env"

load_dotenv(ENV_FILE)

from nonres.config.settings import NonresSettings, nonres_settings, validate_config  # noqa: E402

__all__ = ["CONFIG_DIR", "ENV_FILE", "NonresSettings", "nonres_settings", "validate_config"]
