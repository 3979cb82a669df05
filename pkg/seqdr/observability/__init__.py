"""
Observability module.

Provides structured logging configuration and log-safe value helpers.
"""

from seqdr.observability.logger import configure_logging, get_logger
from seqdr.observability.log_utils import safe_log_value, summarize

__all__ = ["configure_logging", "get_logger", "safe_log_value", "summarize"]
