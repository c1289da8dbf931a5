"""

Tests for the Levinson identity, sweeps and the reference tables

"""

import numpy as np
import pytest

import pointlev
from pointlev.levinson import (EmptySweepError, check_tolerance, default_parameter_grid, load_golden_tables,
                               reproduce_table, sweep, verify_levinson)
from pointlev.models import ModelKind
from pointlev.symbols import Direction


@pytest.fixture()
def tables():
    return load_golden_tables()


def test_golden_tables_shape(tables):
    assert set(tables) == {k.value for k in ModelKind}
    assert [len(tables[k]) for k in ("delta3", "delta2", "delta1", "deltaprime1")] == [4, 2, 4, 4]
    for rows in tables.values():
        for row in rows:
            assert len(row["gamma"]) == 4
            assert np.isclose(sum(row["w"]), row["total"])


@pytest.mark.parametrize("kind", [k.value for k in ModelKind])
def test_reproduce_table(kind, tables):
    rows = reproduce_table(kind, tables=tables)
    assert len(rows) == sum(len(entry["params"]) for entry in tables[kind])
    for row in rows:
        assert row.passed, row.to_dict()


def test_table_row_record(tables):
    row = reproduce_table("delta1", tables=tables)[-1]
    record = row.to_dict()
    assert record["model"] == {"model": "delta1", "alpha": "inf"}
    assert record["snapped"] == [-0.5, 0.0, 0.5, 0.0]
    assert record["pass"] is True
    assert row.to_row()["Gamma2"] == "-1"


@pytest.mark.parametrize("kind, param, w, count", [("delta3", -1.0, -1, 1), ("delta3", 1.0, 0, 0),
                                                   ("delta2", 3.0, -1, 1), ("delta1", "inf", 0, 0),
                                                   ("deltaprime1", -1.0, -1, 1)])
def test_verify_levinson(kind, param, w, count):
    verdict = verify_levinson(pointlev.model_factory(kind, param))
    assert verdict.passed
    assert verdict.snapped_w == w
    assert verdict.bound_count == count
    assert verdict.residual < 1e-9


def test_verdict_record():
    record = verify_levinson(pointlev.Delta1(-2.0)).to_dict()
    assert record["pass"] is True
    assert record["bound_state_energies"] == [-1.0]
    assert record["energy_provenance"] == "derived"
    record = verify_levinson(pointlev.Delta2(0.0)).to_dict()
    assert record["bound_state_energies"] is None
    assert record["energy_provenance"] == "count-only"


@pytest.mark.parametrize("kind", [k.value for k in ModelKind])
def test_default_sweep(kind):
    params = default_parameter_grid(kind)
    assert len(params) == 102
    result = sweep(kind, params)
    assert result.all_passed, [v.to_dict() for v in result.verdicts if not v.passed]
    assert result.summary()["passes"] == 102


@pytest.mark.parametrize("kind", [k.value for k in ModelKind])
def test_plus_direction(kind):
    result = sweep(kind, [-2.0, -0.1, 0.0, 0.1, 2.0, "inf"], direction=Direction.PLUS)
    assert result.all_passed


def test_parallel_sweep_keeps_order():
    params = [-1.0, 0.0, 1.0, "inf"]
    serial = sweep("delta3", params)
    parallel = sweep("delta3", params, jobs=2)
    assert [v.model for v in serial.verdicts] == [v.model for v in parallel.verdicts]
    assert [v.w_total for v in serial.verdicts] == [v.w_total for v in parallel.verdicts]


def test_sweep_records_item_errors():
    result = sweep("delta3", [-1.0, "-inf"])
    assert result.passes == 1
    assert result.errors == 1
    assert "ParameterError" in result.verdicts[1].error
    assert not result.all_passed


def test_empty_sweep():
    with pytest.raises(EmptySweepError):
        sweep("delta1", [])


@pytest.mark.parametrize("tolerance", [0.0, -1e-6, 0.2])
def test_tolerance_range(tolerance):
    with pytest.raises(ValueError):
        check_tolerance(tolerance)


@pytest.mark.parametrize("kind, param, count", [("delta2", -100.0, 1), ("delta2", -60.0, 1), ("delta2", 60.0, 1),
                                                ("delta2", 100.0, 1), ("delta3", 1e-170, 0), ("delta3", -1e200, 1),
                                                ("delta1", 1e-200, 0), ("delta1", -1e300, 1),
                                                ("deltaprime1", 1e200, 0), ("deltaprime1", -1e-250, 1)])
def test_parameters_beyond_the_sweep_decades(kind, param, count):
    verdict = verify_levinson(pointlev.model_factory(kind, param))
    assert verdict.error is None
    assert verdict.passed, verdict.to_dict()
    assert verdict.snapped_w == -count
    assert verdict.residual < 1e-9


ROW_COLUMNS = ["model", "param", "w1", "w2", "w3", "w4", "w_total", "count", "pass"]


@pytest.mark.parametrize("kind", [k.value for k in ModelKind])
def test_rows_share_one_layout(kind):
    result = sweep(kind, [-1.0, "inf", "-inf"])
    rows = result.rows()
    assert [list(row)[:len(ROW_COLUMNS)] for row in rows] == [ROW_COLUMNS] * 3
    assert [row["param"] for row in rows] == ["-1.0", "inf", "-inf"]
    assert [row["count"] for row in rows[:2]] == [1, 0]
    assert rows[2]["error"] is not None
    assert np.isnan(rows[2]["w1"])
