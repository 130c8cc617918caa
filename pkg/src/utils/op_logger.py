"""Operation logging decorator for visibility into CLI command execution."""

import json
import sys
from functools import wraps
from typing import Any, Callable

from ..config import get_settings


class Colors:
    """ANSI codes for exit statuses: green for 0, yellow for 1, red for errors."""

    CALL = '\033[92m'
    RESULT = '\033[94m'
    OK = '\033[92m'
    NEGATIVE = '\033[93m'
    ERROR = '\033[91m'
    RESET = '\033[0m'

    @classmethod
    def for_status(cls, status: int) -> str:
        return {0: cls.OK, 1: cls.NEGATIVE}.get(status, cls.ERROR)


def _enabled() -> bool:
    return get_settings().op_logging


def _emit(color: str, line: str) -> None:
    print(f"    {color}{line}{Colors.RESET}", file=sys.stderr)


def format_value(value: Any, max_length: int = 300) -> str:
    """
    One display string for an argument or result.

    Long sequences keep their first five items; anything past max_length is
    cut with a marker.
    """
    if isinstance(value, dict):
        text = json.dumps(value, default=str, sort_keys=True)
    elif isinstance(value, (list, tuple)):
        shown = [str(v) for v in value[:5]]
        text = f"{shown} (+{len(value) - 5} more)" if len(value) > 5 else str(shown)
    else:
        text = str(value)
    return text if len(text) <= max_length else f"{text[:max_length]}... (truncated)"


def log_operation_call(name: str, args: dict) -> None:
    """One line for the command, one per argument that was given."""
    if not _enabled():
        return
    _emit(Colors.CALL, f"▶ [{name}]")
    for key, value in args.items():
        if value is None or value is False or key.startswith("_") or callable(value):
            continue
        _emit(Colors.CALL, f"   {key}: {format_value(value, max_length=100)}")


def log_operation_result(name: str, result: Any) -> None:
    """Exit status of a RunReport (or int), otherwise a short preview."""
    if not _enabled():
        return
    status = getattr(result, "status", result)
    if isinstance(status, int) and not isinstance(status, bool):
        _emit(Colors.for_status(status), f"   ✓ [{name}] exit {status}")
        return
    _emit(Colors.RESULT, f"   ✓ [{name}] returned: {format_value(result, max_length=200)}")


def logged_operation(func: Callable) -> Callable:
    """
    Decorator to log operation calls and results on stderr.

    Usage:
        @logged_operation
        def cmd_check(args, inputs) -> RunReport:
            ...

    Namespace-like arguments are shown field by field. Logging is controlled
    by Settings.op_logging and read on every call, so configure(op_logging=True)
    takes effect immediately.
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        name = func.__name__
        shown = dict(kwargs)
        for position, arg in enumerate(args):
            shown.update(vars(arg) if hasattr(arg, "__dict__") else {f"arg{position}": arg})
        log_operation_call(name, shown)
        try:
            result = func(*args, **kwargs)
        except Exception as exc:
            if _enabled():
                _emit(Colors.ERROR, f"   ✗ [{name}] {type(exc).__name__}: {exc}")
            raise
        log_operation_result(name, result)
        return result

    return wrapper
