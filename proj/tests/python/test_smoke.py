import math

import pytest

import coalstab as cs


def test_duopoly_quantities():
    params = cs.validate_params(10, 1, 1.0, 2)
    profile = cs.closed_form_equilibrium(params, cs.make_structure(2, 1, [1]))
    assert profile.y == pytest.approx([3.0, 3.0])


def test_validation_raises_value_error():
    with pytest.raises(ValueError, match="non-zero"):
        cs.validate_params(10, 1, 0.0, 5)
    with pytest.raises(cs.DomainError, match="condition K"):
        cs.validate_params(10, 1, -0.5, 4)
    with pytest.raises(ValueError):
        cs.make_structure(5, 2, [2, 2])


def test_oracle_agrees_with_closed_form():
    params = cs.validate_params(10, 1, 0.9, 46)
    st = cs.make_structure(46, 4, [7] * 6)
    closed = cs.closed_form_equilibrium(params, st)
    oracle = cs.solve_foc_system(params, st)
    assert oracle.within_spread < 1e-10
    assert closed.y == pytest.approx(oracle.y, rel=1e-9)
    assert len(oracle.agent_quantities) == 46


def test_worth_and_grand_identity():
    params = cs.validate_params(10, 1, 0.5, 6)
    assert cs.coalition_worth(params, cs.make_structure(6, 2, [2, 2])).v_s == pytest.approx(9.72, rel=1e-12)
    grand = cs.coalition_worth(params, cs.make_structure(6, 6))
    assert grand.v_s == pytest.approx(cs.grand_worth(params), rel=1e-12)


def test_partitions_and_extremes():
    assert cs.enumerate_partitions(4, 2) == [[3, 1], [2, 2]]
    assert len(cs.enumerate_partitions(10)) == 42 == cs.partition_count(10)
    assert cs.min_worth_partition(42, 6) == ([7] * 6, False)
    assert cs.min_worth_partition(7, 2) == ([4, 3], True)
    assert cs.max_worth_partition(42, 6) == [37, 1, 1, 1, 1, 1]


def test_thresholds_and_beliefs():
    assert cs.threshold_zeta(46, 4, 0.9).zeta == pytest.approx(4.57, abs=0.01)
    assert cs.threshold_gamma1(46, 4) == pytest.approx(2 * (math.sqrt(11.5) - 1))
    params = cs.validate_params(10, 1, 0.9, 46)
    v = cs.belief_verdict(params, 4, cs.BeliefMode.FIXED_J_OPTIMISTIC, j=6)
    assert v.structure.outsider_sizes == [37, 1, 1, 1, 1, 1]
    assert v.belief_mode == cs.BeliefMode.FIXED_J_OPTIMISTIC


def test_scan():
    report = cs.exhaustive_scan(cs.validate_params(10, 1, 1.0, 9), threads=2)
    assert [d.empirical_jstar for d in report.per_s] == [4, 3, 2, 1, 1, 1, 1, 1]
    assert report.total_cells == len(report.cells)
    with pytest.raises(cs.BudgetExceeded):
        cs.exhaustive_scan(cs.validate_params(10, 1, 0.5, 20))
