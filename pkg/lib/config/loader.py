"""Static configuration loader for algext."""

import json
from pathlib import Path

# Config directory
_CONFIG_DIR = Path(__file__).parent

# Load all configurations once at module import
with (_CONFIG_DIR / "gallery.json").open(encoding="utf-8") as f:
    GALLERY_CONFIG = json.load(f)

with (_CONFIG_DIR / "harnesses.json").open(encoding="utf-8") as f:
    HARNESSES_CONFIG = json.load(f)

# Lookup maps
GALLERY_MAP = GALLERY_CONFIG["fixtures"]
HARNESS_MAP = HARNESSES_CONFIG["harnesses"]

# Fixtures grouped by the constructor that builds them
CONSTRUCTOR_MAP: dict[str, list[str]] = {}
for fixture_name, entry in GALLERY_MAP.items():
    CONSTRUCTOR_MAP.setdefault(entry["constructor"], []).append(fixture_name)

# Alternative harness names -> registered name
HARNESS_ALIASES: dict[str, str] = {
    alias: harness_name
    for harness_name, entry in HARNESS_MAP.items()
    for alias in entry.get("aliases", [])
}
