"""Tests for Dataset, NuisanceParams, TreatmentPath and path relabeling."""

import numpy as np
import pytest
from pydantic import ValidationError

from seqdr.core.exceptions import DataFormatError, InvalidArgumentError
from seqdr.core.model_core import Dataset, NuisanceParams, OverlapConfig, TreatmentPath, relabel_for_path


def _columns(n: int = 4) -> dict[str, np.ndarray]:
    return {
        "y": np.arange(n, dtype=float),
        "a1": np.array([0.0, 1.0] * (n // 2)),
        "a2": np.array([1.0, 0.0] * (n // 2)),
        "s1": np.column_stack([np.ones(n), np.linspace(-1.0, 1.0, n)]),
        "s2": np.linspace(0.0, 1.0, n).reshape(n, 1),
    }


class TestDataset:
    """Tests for Dataset validation and accessors."""

    def test_valid_dataset_dimensions(self) -> None:
        """Dimensions are read from the covariate blocks."""
        data = Dataset(**_columns())
        assert (data.n, data.d1, data.d2, data.d) == (4, 2, 1, 3)
        assert data.s_bar.shape == (4, 3)

    def test_arrays_are_read_only(self) -> None:
        """Stored arrays cannot be written through."""
        data = Dataset(**_columns())
        with pytest.raises(ValueError):
            data.y[0] = 10.0

    def test_input_arrays_are_copied(self) -> None:
        """Mutating the caller's array does not change the dataset."""
        columns = _columns()
        data = Dataset(**columns)
        columns["y"][0] = 99.0
        assert data.y[0] == 0.0

    def test_non_binary_treatment_rejected(self) -> None:
        """A treatment value outside {0, 1} raises DataFormatError naming the column."""
        columns = _columns()
        columns["a1"] = np.array([0.0, 2.0, 1.0, 0.0])
        with pytest.raises(DataFormatError) as exc_info:
            Dataset(**columns)
        assert exc_info.value.details["column"] == "A1"
        assert exc_info.value.details["observation"] == 1

    def test_constant_column_required(self) -> None:
        """S1 column 0 must be 1 on every row."""
        columns = _columns()
        s1 = columns["s1"].copy()
        s1[2, 0] = 0.5
        columns["s1"] = s1
        with pytest.raises(DataFormatError):
            Dataset(**columns)

    def test_non_finite_rejected(self) -> None:
        """NaN anywhere raises DataFormatError."""
        columns = _columns()
        columns["y"] = np.array([0.0, np.nan, 1.0, 2.0])
        with pytest.raises(DataFormatError):
            Dataset(**columns)

    def test_row_count_mismatch_rejected(self) -> None:
        """Columns with different lengths raise DataFormatError."""
        columns = _columns()
        columns["a2"] = np.ones(3)
        with pytest.raises(DataFormatError):
            Dataset(**columns)

    def test_single_exposure_requires_unit_second_treatment(self) -> None:
        """With no S2 columns every A2 must be 1."""
        columns = _columns()
        columns["s2"] = np.empty((4, 0))
        with pytest.raises(DataFormatError):
            Dataset(**columns)
        columns["a2"] = np.ones(4)
        assert Dataset(**columns).single_exposure

    def test_subset_keeps_order(self) -> None:
        """subset returns the requested rows in the requested order."""
        data = Dataset(**_columns())
        part = data.subset(np.array([3, 1]))
        np.testing.assert_array_equal(part.y, [3.0, 1.0])


class TestNuisanceParams:
    """Tests for NuisanceParams validation."""

    def test_zeros_shapes(self) -> None:
        """zeros builds d1- and d-length vectors."""
        eta = NuisanceParams.zeros(3, 2)
        assert eta.gamma.shape == (3,) and eta.delta.shape == (5,)
        assert eta.alpha.shape == (5,) and eta.beta.shape == (3,)

    def test_non_finite_rejected(self) -> None:
        """Infinite entries raise InvalidArgumentError."""
        with pytest.raises(InvalidArgumentError):
            NuisanceParams(
                gamma=np.array([np.inf, 0.0]),
                delta=np.zeros(3),
                alpha=np.zeros(3),
                beta=np.zeros(2),
            )

    def test_inconsistent_lengths_rejected(self) -> None:
        """gamma and beta must share a length."""
        with pytest.raises(InvalidArgumentError):
            NuisanceParams(gamma=np.zeros(2), delta=np.zeros(3), alpha=np.zeros(3), beta=np.zeros(3))

    def test_dict_roundtrip(self) -> None:
        """to_dict and from_dict preserve every coefficient."""
        eta = NuisanceParams(
            gamma=np.array([0.1, 0.2]),
            delta=np.array([0.3, 0.4, 0.5]),
            alpha=np.array([1.0, 2.0, 3.0]),
            beta=np.array([-1.0, 0.5]),
        )
        restored = NuisanceParams.from_dict(eta.to_dict())
        for name in ("gamma", "delta", "alpha", "beta"):
            np.testing.assert_array_equal(restored.stage(name), eta.stage(name))

    def test_unknown_stage_rejected(self) -> None:
        """stage() rejects names other than the four slots."""
        with pytest.raises(InvalidArgumentError):
            NuisanceParams.zeros(2, 1).stage("theta")


class TestTreatmentPath:
    """Tests for TreatmentPath parsing."""

    def test_parse_and_label(self) -> None:
        """'1,0' parses to (1, 0) and labels back identically."""
        path = TreatmentPath.parse("1,0")
        assert (path.a1_target, path.a2_target) == (1, 0)
        assert path.label == "1,0"
        assert not path.is_treated_path

    @pytest.mark.parametrize("text", ["1", "1,2", "a,b", "1,0,1"])
    def test_malformed_rejected(self, text: str) -> None:
        """Anything but two 0/1 values raises InvalidArgumentError."""
        with pytest.raises(InvalidArgumentError):
            TreatmentPath.parse(text)

    def test_out_of_range_rejected(self) -> None:
        """Constructor validation bounds the targets to {0, 1}."""
        with pytest.raises(ValidationError):
            TreatmentPath(a1_target=2)


class TestOverlapConfig:
    """Tests for OverlapConfig bounds."""

    @pytest.mark.parametrize("c0", [0.0, 0.5, -0.1])
    def test_floor_bounds(self, c0: float) -> None:
        """c0 must lie strictly inside (0, 0.5)."""
        with pytest.raises(ValidationError):
            OverlapConfig(c0=c0)


class TestRelabelForPath:
    """Tests for relabel_for_path."""

    def test_treated_path_is_identity(self) -> None:
        """Path (1,1) leaves the indicators unchanged."""
        data = Dataset(**_columns())
        coded = relabel_for_path(data, TreatmentPath())
        np.testing.assert_array_equal(coded.a1, data.a1)
        np.testing.assert_array_equal(coded.a2, data.a2)

    def test_control_path_complements_indicators(self) -> None:
        """Path (0,0) maps a1=(0,1), a2=(1,0) to a1'=(1,0), a2'=(0,1)."""
        columns = _columns(2)
        data = Dataset(**columns)
        coded = relabel_for_path(data, TreatmentPath(a1_target=0, a2_target=0))
        np.testing.assert_array_equal(coded.a1, [1.0, 0.0])
        np.testing.assert_array_equal(coded.a2, [0.0, 1.0])
        np.testing.assert_array_equal(coded.y, data.y)
        np.testing.assert_array_equal(coded.s_bar, data.s_bar)

    @pytest.mark.parametrize("label", ["0,0", "0,1", "1,0", "1,1"])
    def test_treated_relabel_is_idempotent(self, label: str) -> None:
        """Relabeling for the path and then for (1,1) changes nothing further."""
        data = Dataset(**_columns())
        once = relabel_for_path(data, TreatmentPath.parse(label))
        twice = relabel_for_path(once, TreatmentPath())
        np.testing.assert_array_equal(once.a1, twice.a1)
        np.testing.assert_array_equal(once.a2, twice.a2)

    def test_single_exposure_rejects_untreated_second_time(self) -> None:
        """Without S2 a path asking for A2 = 0 is rejected instead of building an empty time-2 arm."""
        columns = _columns()
        data = Dataset(
            y=columns["y"],
            a1=columns["a1"],
            a2=np.ones(4),
            s1=columns["s1"],
            s2=np.empty((4, 0)),
        )
        with pytest.raises(InvalidArgumentError) as exc_info:
            relabel_for_path(data, TreatmentPath(a1_target=0, a2_target=0))
        assert exc_info.value.details["field"] == "path"
        coded = relabel_for_path(data, TreatmentPath(a1_target=0, a2_target=1))
        np.testing.assert_array_equal(coded.a1, 1.0 - data.a1)
        np.testing.assert_array_equal(coded.a2, np.ones(4))
