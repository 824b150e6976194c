import math

import numpy as np

from conftest import random_pencil, rng
from qritz.solver import solve_full
from qritz.study import (
    STUDY_COLUMNS,
    StudyRow,
    builtin_case,
    case_from_pencil,
    format_float,
    run_study,
    verdict,
    write_study_csv,
)


def test_format_float_corner_values():
    assert format_float(math.inf) == "inf"
    assert format_float(-math.inf) == "-inf"
    assert format_float(math.nan) == "nan"
    assert format_float(0.25) == "2.5000000000000000e-01"


def test_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    write_study_csv([], path)
    lines = path.read_text().splitlines()
    assert lines == [",".join(STUDY_COLUMNS)]


def test_csv_one_row(tmp_path):
    row = StudyRow(*([1.0] * len(STUDY_COLUMNS)))
    path = tmp_path / "one.csv"
    write_study_csv([row], path)
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert lines[1].split(",")[0] == "1.0000000000000000e+00"


def test_csv_deterministic_bytes(tmp_path):
    case = builtin_case()
    rows, _ = run_study(case, [1e-4, 1e-8], seed=5)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_study_csv(rows, p1)
    rows2, _ = run_study(case, [1e-4, 1e-8], seed=5)
    write_study_csv(rows2, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_zero_epsilon_row():
    case = builtin_case()
    rows, verdicts = run_study(case, [0.0], seed=2)
    row = rows[0]
    assert row.sin_theta == 0.0
    assert row.refined_angle <= 1e-13
    assert row.ritz_value_err <= 1e-11
    assert "REFINED-OK" in verdicts[0]


def test_builtin_small_epsilon_stagnates():
    case = builtin_case()
    rows, verdicts = run_study(case, [1e-12], seed=1)
    assert "RITZ-STAGNANT" in verdicts[0]
    assert "REFINED-OK" in verdicts[0]
    assert rows[0].ritz_vector_bound > 1.0  # bound rightly refuses to promise


def test_case_from_pencil_picks_reference(g):
    p = random_pencil(g, 5)
    pairs = solve_full(p)
    target = pairs[0].value
    case = case_from_pencil(p, target, dim=3)
    assert abs(case.ref_value - target) <= 1e-12
    assert case.companions.shape == (5, 2)
    stacked = np.column_stack([case.ref_vector, case.companions])
    assert np.linalg.matrix_rank(stacked, tol=1e-8) == 3


def test_failed_row_marks_nan():
    # A dimension-1 "companion" block identical to the eigenvector cannot
    # be orthonormalized at epsilon 0: the row fails but the run continues.
    case = builtin_case()
    bad = case.__class__(
        pencil=case.pencil,
        ref_value=case.ref_value,
        ref_vector=case.ref_vector,
        companions=case.ref_vector.reshape(-1, 1),
    )
    rows, verdicts = run_study(bad, [0.0, 1e-6], seed=1)
    assert math.isnan(rows[0].sin_theta)
    assert verdicts[0] == "FAILED"
    assert not math.isnan(rows[1].sin_theta)


def test_verdict_thresholds():
    base = dict.fromkeys(STUDY_COLUMNS, 0.0)
    base.update(epsilon=1e-6, sin_theta=1e-8)
    ok = StudyRow(**{**base, "ritz_angle": 5e-7, "refined_angle": 1e-8})
    assert verdict(ok) == "RITZ-OK REFINED-OK"
    stag = StudyRow(**{**base, "ritz_angle": 2e-6, "refined_angle": 1e-8})
    assert verdict(stag) == "RITZ-STAGNANT REFINED-OK"
    poor = StudyRow(**{**base, "ritz_angle": 2e-6, "refined_angle": 5e-5})
    assert verdict(poor) == "RITZ-STAGNANT REFINED-POOR"
