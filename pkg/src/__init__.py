"""whylog: knowing-that and knowing-why, with explanation terms."""

from .config import Settings, configure, get_settings

__all__ = ["Settings", "configure", "get_settings"]
