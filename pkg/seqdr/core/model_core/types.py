"""
Shared domain types for sequential doubly robust estimation.

Contains:
- Dataset: N observations of (Y, A1, A2, S1, S2) held as read-only arrays
- Observation: a single row of a Dataset
- NuisanceParams: the coefficient quadruple (gamma, delta, alpha, beta)
- TreatmentPath: target treatment sequence (a1, a2)
- OverlapConfig: propensity clipping floor

Dependencies: numpy, pydantic
System role: Data containers passed between every estimation stage
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from seqdr.core.exceptions import DataFormatError, InvalidArgumentError


def _readonly(values: Any, ndim: int) -> np.ndarray:
    """Copy values into a contiguous float64 array and lock it."""
    array = np.array(values, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise DataFormatError(f"Expected a {ndim}-dimensional array, got shape {array.shape}")
    array = np.ascontiguousarray(array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Observation:
    """One observation W = (Y, A1, A2, S1, S2)."""

    y: float
    a1: float
    a2: float
    s1: np.ndarray
    s2: np.ndarray


@dataclass(frozen=True, eq=False)
class Dataset:
    """N observations with a d1-dimensional time-1 and d2-dimensional time-2 covariate block.

    Column 0 of ``s1`` is the constant 1. ``d2 == 0`` encodes the single-exposure
    case, in which every ``a2`` must equal 1.
    """

    y: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    s1: np.ndarray
    s2: np.ndarray

    def __post_init__(self) -> None:
        y = _readonly(self.y, 1)
        a1 = _readonly(self.a1, 1)
        a2 = _readonly(self.a2, 1)
        s1 = _readonly(self.s1, 2)
        s2_raw = np.asarray(self.s2, dtype=np.float64)
        if s2_raw.size == 0 and s2_raw.ndim < 2:
            s2_raw = np.empty((y.shape[0], 0))
        s2 = _readonly(s2_raw, 2)

        n = y.shape[0]
        if n < 1:
            raise DataFormatError("Dataset needs at least one observation")
        for name, column in (("A1", a1), ("A2", a2), ("S1", s1), ("S2", s2)):
            if column.shape[0] != n:
                raise DataFormatError(
                    f"{name} has {column.shape[0]} rows, expected {n}", column=name
                )
        if s1.shape[1] < 1:
            raise DataFormatError("S1 needs at least the constant column", column="S1_0")
        for name, column in (("Y", y), ("A1", a1), ("A2", a2), ("S1", s1), ("S2", s2)):
            if not np.all(np.isfinite(column)):
                bad = int(np.flatnonzero(~np.isfinite(column.reshape(n, -1)).all(axis=1))[0])
                raise DataFormatError(
                    f"Non-finite value in {name}", column=name, details={"observation": bad}
                )
        for name, column in (("A1", a1), ("A2", a2)):
            bad_rows = np.flatnonzero((column != 0.0) & (column != 1.0))
            if bad_rows.size:
                raise DataFormatError(
                    f"{name} must be binary",
                    column=name,
                    details={"observation": int(bad_rows[0])},
                )
        bad_rows = np.flatnonzero(s1[:, 0] != 1.0)
        if bad_rows.size:
            raise DataFormatError(
                "S1_0 must be the constant 1",
                column="S1_0",
                details={"observation": int(bad_rows[0])},
            )
        if s2.shape[1] == 0 and np.any(a2 != 1.0):
            raise DataFormatError(
                "Single-exposure data (no S2 columns) requires A2 == 1 everywhere",
                column="A2",
            )

        object.__setattr__(self, "y", y)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        object.__setattr__(self, "s1", s1)
        object.__setattr__(self, "s2", s2)

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    @property
    def d1(self) -> int:
        return int(self.s1.shape[1])

    @property
    def d2(self) -> int:
        return int(self.s2.shape[1])

    @property
    def d(self) -> int:
        """Dimension of the concatenated history (S1, S2)."""
        return self.d1 + self.d2

    @property
    def single_exposure(self) -> bool:
        return self.d2 == 0

    @cached_property
    def s_bar(self) -> np.ndarray:
        """Concatenated history (S1, S2), shape N x d."""
        s_bar = np.ascontiguousarray(np.hstack([self.s1, self.s2]))
        s_bar.setflags(write=False)
        return s_bar

    def subset(self, index: np.ndarray) -> "Dataset":
        """
        Restrict to a subset of rows.

        Args:
            index: Integer row indices (order is kept)

        Returns:
            Dataset: New dataset holding the selected rows
        """
        index = np.asarray(index, dtype=np.intp)
        return Dataset(
            y=self.y[index],
            a1=self.a1[index],
            a2=self.a2[index],
            s1=self.s1[index],
            s2=self.s2[index],
        )

    def with_treatments(self, a1: np.ndarray, a2: np.ndarray) -> "Dataset":
        """Return a copy with replaced treatment indicators."""
        return Dataset(y=self.y, a1=a1, a2=a2, s1=self.s1, s2=self.s2)

    def with_outcome(self, y: np.ndarray) -> "Dataset":
        """Return a copy with a replaced outcome vector."""
        return Dataset(y=y, a1=self.a1, a2=self.a2, s1=self.s1, s2=self.s2)

    def observation(self, i: int) -> Observation:
        """Return row ``i`` as an Observation."""
        return Observation(
            y=float(self.y[i]),
            a1=float(self.a1[i]),
            a2=float(self.a2[i]),
            s1=self.s1[i],
            s2=self.s2[i],
        )

    @classmethod
    def from_observation(cls, obs: Observation) -> "Dataset":
        """Build a one-row Dataset from an Observation."""
        s2 = np.asarray(obs.s2, dtype=np.float64).reshape(1, -1)
        return cls(
            y=np.array([obs.y]),
            a1=np.array([obs.a1]),
            a2=np.array([obs.a2]),
            s1=np.asarray(obs.s1, dtype=np.float64).reshape(1, -1),
            s2=s2,
        )


@dataclass(frozen=True, eq=False)
class NuisanceParams:
    """Coefficient quadruple eta = (gamma, delta, alpha, beta).

    gamma and beta live on S1 (length d1); delta and alpha live on (S1, S2)
    (length d = d1 + d2).
    """

    gamma: np.ndarray
    delta: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        for name in ("gamma", "delta", "alpha", "beta"):
            vector = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if vector.ndim != 1:
                raise InvalidArgumentError(f"{name} must be a vector", field=name)
            if not np.all(np.isfinite(vector)):
                raise InvalidArgumentError(f"{name} has non-finite entries", field=name)
            vector.setflags(write=False)
            object.__setattr__(self, name, vector)
        if self.gamma.shape != self.beta.shape:
            raise InvalidArgumentError(
                "gamma and beta must share the S1 dimension",
                field="beta",
                details={"gamma": self.gamma.shape[0], "beta": self.beta.shape[0]},
            )
        if self.delta.shape != self.alpha.shape:
            raise InvalidArgumentError(
                "delta and alpha must share the history dimension",
                field="alpha",
                details={"delta": self.delta.shape[0], "alpha": self.alpha.shape[0]},
            )
        if self.delta.shape[0] < self.gamma.shape[0]:
            raise InvalidArgumentError("delta is shorter than gamma", field="delta")

    @property
    def d1(self) -> int:
        return int(self.gamma.shape[0])

    @property
    def d(self) -> int:
        return int(self.delta.shape[0])

    def check_compatible(self, data: Dataset) -> None:
        """Raise InvalidArgumentError unless the dimensions match ``data``."""
        if self.d1 != data.d1 or self.d != data.d:
            raise InvalidArgumentError(
                "Nuisance dimensions do not match the dataset",
                field="eta",
                details={"eta": (self.d1, self.d), "data": (data.d1, data.d)},
            )

    def stage(self, name: str) -> np.ndarray:
        """Return the coefficient vector of one stage by name."""
        if name not in ("gamma", "delta", "alpha", "beta"):
            raise InvalidArgumentError(f"Unknown stage {name!r}", field="stage")
        return getattr(self, name)

    @classmethod
    def zeros(cls, d1: int, d2: int) -> "NuisanceParams":
        """All-zero coefficients for the given dimensions."""
        return cls(
            gamma=np.zeros(d1),
            delta=np.zeros(d1 + d2),
            alpha=np.zeros(d1 + d2),
            beta=np.zeros(d1),
        )

    def to_dict(self) -> dict[str, list[float]]:
        """Convert to dictionary for serialization."""
        return {
            "gamma": self.gamma.tolist(),
            "delta": self.delta.tolist(),
            "alpha": self.alpha.tolist(),
            "beta": self.beta.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict[str, Any]) -> "NuisanceParams":
        return cls(
            gamma=np.asarray(payload["gamma"], dtype=np.float64),
            delta=np.asarray(payload["delta"], dtype=np.float64),
            alpha=np.asarray(payload["alpha"], dtype=np.float64),
            beta=np.asarray(payload["beta"], dtype=np.float64),
        )


class TreatmentPath(BaseModel):
    """Target treatment sequence (a1, a2)."""

    model_config = ConfigDict(frozen=True)

    a1_target: int = Field(default=1, ge=0, le=1, description="Treatment at time 1")
    a2_target: int = Field(default=1, ge=0, le=1, description="Treatment at time 2")

    @classmethod
    def parse(cls, text: str) -> "TreatmentPath":
        """
        Parse an ``"a1,a2"`` string such as ``"1,0"``.

        Raises:
            InvalidArgumentError: If the text is not two comma-separated 0/1 values
        """
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 2 or any(part not in ("0", "1") for part in parts):
            raise InvalidArgumentError(f"Treatment path must look like '1,0', got {text!r}", field="path")
        return cls(a1_target=int(parts[0]), a2_target=int(parts[1]))

    @property
    def label(self) -> str:
        return f"{self.a1_target},{self.a2_target}"

    @property
    def is_treated_path(self) -> bool:
        return self.a1_target == 1 and self.a2_target == 1


class OverlapConfig(BaseModel):
    """Propensity clipping applied when the score divides by fitted propensities."""

    model_config = ConfigDict(frozen=True)

    c0: float = Field(default=0.01, gt=0.0, lt=0.5, description="Overlap floor")
    clip_propensities: bool = Field(
        default=True,
        description="Clip propensities into [c0, 1 - c0] before division",
    )
