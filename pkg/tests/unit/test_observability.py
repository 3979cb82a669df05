"""Tests for logging configuration and log-safe values."""

import logging
import subprocess
import sys
import textwrap
from pathlib import Path

import numpy as np

from seqdr.observability import configure_logging, get_logger, safe_log_value, summarize


class TestSafeLogValue:
    """Tests for safe_log_value."""

    def test_array_summary(self) -> None:
        """Arrays are reduced to shape, norm and nonzero count."""
        text = safe_log_value(np.array([3.0, 0.0, 4.0]))
        assert text == "array(shape=(3,), l2=5, nnz=2, finite=True)"

    def test_non_finite_array(self) -> None:
        """Non-finite arrays are flagged instead of summed."""
        assert "finite=False" in safe_log_value(np.array([np.inf, 1.0]))

    def test_empty_array(self) -> None:
        """Empty arrays report their shape only."""
        assert safe_log_value(np.empty((0, 2))) == "array(shape=(0, 2))"

    def test_containers_and_none(self) -> None:
        """Containers are counted and None is spelled out."""
        assert safe_log_value([1, 2, 3]) == "list(3 items)"
        assert safe_log_value({"a": 1}) == "dict(1 keys)"
        assert safe_log_value(None) == "None"

    def test_truncation(self) -> None:
        """Long strings are truncated with their total length."""
        text = safe_log_value("x" * 300, max_length=10)
        assert text.startswith("x" * 10)
        assert "300 total" in text

    def test_summarize(self) -> None:
        """summarize maps every value through safe_log_value."""
        assert summarize(coef=np.zeros(2), fold=1) == {"coef": "array(shape=(2,), l2=0, nnz=0, finite=True)", "fold": "1"}


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_single_handler_and_level(self) -> None:
        """Reconfiguring replaces the handler and sets the level."""
        configure_logging("WARNING")
        configure_logging("DEBUG")
        root = logging.getLogger()
        assert len(root.handlers) == 1
        assert root.level == logging.DEBUG

    def test_key_value_rendering(self, capsys) -> None:
        """Events render as key=value pairs on stderr."""
        configure_logging("INFO")
        get_logger("seqdr.test").info("stage_fit", fold=0)
        err = capsys.readouterr().err
        assert "event='stage_fit'" in err
        assert "fold=0" in err


class TestUnconfiguredLogging:
    """Library logging before configure_logging is called."""

    def test_debug_and_info_are_silent(self) -> None:
        """A fresh interpreter that never configures logging prints nothing for DEBUG or INFO events."""
        script = textwrap.dedent(
            """
            import numpy as np

            from seqdr.core.optim import SolverConfig, solve
            from seqdr.observability import get_logger
            from tests.helpers import separable_quadratic

            logger = get_logger("seqdr.quiet")
            logger.debug("debug_event", value=1)
            logger.info("info_event", value=2)
            solve(separable_quadratic(np.array([3.0, -2.0])), SolverConfig(lam=0.1, max_iter=1))
            """
        )
        completed = subprocess.run(
            [sys.executable, "-c", script],
            capture_output=True,
            text=True,
            check=True,
            cwd=Path(__file__).resolve().parents[2],
        )
        assert completed.stdout == ""
        assert "debug_event" not in completed.stderr
        assert "info_event" not in completed.stderr
        assert "solve_not_converged" not in completed.stderr
