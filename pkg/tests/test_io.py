import json
import math

import numpy as np
import pytest

from blochlab.io import dumps, jsonable, write_trace_csv


def test_jsonable_types():
    data = {"a": np.float64(1.5), "b": np.int64(3), "c": np.bool_(True), "d": 1 + 2j,
            "e": (math.inf, -math.inf, math.nan), 4: None}
    assert jsonable(data) == {"a": 1.5, "b": 3, "c": True, "d": [1.0, 2.0], "e": [None, None, None], "4": None}
    with pytest.raises(TypeError):
        jsonable(object())


def test_dumps_is_sorted_and_strict():
    text = dumps({"z": 1, "a": math.nan})
    assert text.endswith("\n") and text.index('"a"') < text.index('"z"')
    assert json.loads(text) == {"a": None, "z": 1}


def test_trace_csv_round_trips_floats(tmp_path):
    p = tmp_path / "t.csv"
    x = 0.1 + 0.2
    write_trace_csv(p, [{"level": 0, "r_gap_log": x, "theta": 0.0, "quantity": 1e-300, "log_scale_flag": True}])
    head, row = p.read_text().splitlines()
    assert head == "level,r_gap_log,theta,quantity,log_scale_flag"
    assert float(row.split(",")[1]) == x and row.endswith(",1")
