"""Utility modules for whylog."""

from .op_logger import Colors, format_value, logged_operation

__all__ = [
    "Colors",
    "format_value",
    "logged_operation",
]
