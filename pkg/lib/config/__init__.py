"""Config package."""

from lib.config.loader import (
    CONSTRUCTOR_MAP,
    GALLERY_CONFIG,
    GALLERY_MAP,
    HARNESS_ALIASES,
    HARNESS_MAP,
    HARNESSES_CONFIG,
)

__all__ = [
    "CONSTRUCTOR_MAP",
    "GALLERY_CONFIG",
    "GALLERY_MAP",
    "HARNESSES_CONFIG",
    "HARNESS_ALIASES",
    "HARNESS_MAP",
]
