"""
Logging utilities for safe structured logging.

Keeps coefficient vectors and score arrays out of log lines by reducing them
to short summaries.

Dependencies: numpy
System role: Logging helper functions
"""

from typing import Any

import numpy as np


def safe_log_value(value: Any, max_length: int = 200) -> str:
    """
    Safely convert any value to a short string for logging.

    Arrays become a shape/norm/nonzero summary; long strings are truncated.

    Args:
        value: Value to convert
        max_length: Maximum length before truncating

    Returns:
        str: Safe string representation
    """
    try:
        if value is None:
            return "None"
        if isinstance(value, np.ndarray):
            if value.size == 0:
                return f"array(shape={value.shape})"
            finite = bool(np.all(np.isfinite(value)))
            norm = float(np.linalg.norm(value)) if finite else float("nan")
            return (
                f"array(shape={value.shape}, l2={norm:.4g}, "
                f"nnz={int(np.count_nonzero(value))}, finite={finite})"
            )
        if isinstance(value, (list, tuple)):
            val_str = f"{type(value).__name__}({len(value)} items)"
        elif isinstance(value, dict):
            val_str = f"dict({len(value)} keys)"
        else:
            val_str = str(value)

        if len(val_str) > max_length:
            return val_str[:max_length] + f"... (truncated, {len(val_str)} total)"
        return val_str
    except Exception as e:  # pylint: disable=broad-except
        return f"<unable to log: {type(e).__name__}>"


def summarize(**context: Any) -> dict[str, str]:
    """
    Convert a context mapping into log-safe values.

    Args:
        **context: Arbitrary key-value pairs

    Returns:
        dict[str, str]: Same keys with safe string values
    """
    return {key: safe_log_value(val) for key, val in context.items()}
