import numpy as np
import pytest

from graphdr import (
    InvalidInputError,
    aggregate_by_n,
    best_theta,
    compare,
    intersect_many,
    theta_sweep,
)
from graphdr.harness import (
    AggregateRecord,
    CompareRecord,
    DimMode,
    ExperimentConfig,
    SweepRecord,
    generate_problem,
    generate_starts,
)


def desk_config(**overrides):
    base = dict(
        master_seed=123,
        p=10,
        n_values=(3,),
        instances_per_n=3,
        starts_per_instance=2,
        theta_grid=(0.5, 1.0, 1.5),
        algorithms=("sequential", "complete"),
        tol=1e-6,
        max_iters=10**5,
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        desk_config(theta_grid=(0.5, 2.0))
    with pytest.raises(InvalidInputError):
        desk_config(algorithms=("complete", "bogus"))
    with pytest.raises(InvalidInputError):
        DimMode("weird")


def test_generate_problem_common_core_guarantees_intersection():
    rng = np.random.default_rng(0)
    problem = generate_problem(12, 4, DimMode("common_core", d_min=4, d_max=6, core_dim=2), rng)
    assert intersect_many(problem.subspaces).dim >= 2


def test_generate_problem_generic_trivial_intersection():
    rng = np.random.default_rng(1)
    problem = generate_problem(50, 3, DimMode("generic", d_min=25, d_max=25), rng)
    # codimensions 25+25+25 > 50: trivial with probability 1
    assert intersect_many(problem.subspaces).dim == 0


def test_generate_problem_deterministic():
    a = generate_problem(10, 3, DimMode(), np.random.default_rng(5))
    b = generate_problem(10, 3, DimMode(), np.random.default_rng(5))
    for sa, sb in zip(a.subspaces, b.subspaces):
        assert np.array_equal(sa.basis, sb.basis)


def test_generate_problem_infeasible_dims():
    with pytest.raises(InvalidInputError):
        generate_problem(5, 3, DimMode(d_min=2, d_max=5), np.random.default_rng(0))


def test_shared_starts_are_instance_pure():
    a = generate_starts(8, 4, 3, master_seed=9, instance=1)
    b = generate_starts(8, 4, 3, master_seed=9, instance=1)
    c = generate_starts(8, 4, 3, master_seed=9, instance=2)
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert not np.array_equal(a[0], c[0])


def test_sweep_tau_contract():
    records = theta_sweep(desk_config())
    assert records  # nonempty
    by_cell = {}
    for r in records:
        by_cell.setdefault((r.algorithm, r.n, r.instance_id), []).append(r)
    for rows in by_cell.values():
        taus = [r.tau for r in rows]
        assert all(t >= 1.0 for t in taus)
        assert min(taus) == 1.0


def test_sweep_deterministic():
    a = theta_sweep(desk_config())
    b = theta_sweep(desk_config())
    assert a == b


def test_sweep_parallel_matches_serial():
    a = theta_sweep(desk_config())
    b = theta_sweep(desk_config(), jobs=2)
    assert a == b


def test_theta_symmetry_for_equal_graph_pairs():
    config = desk_config(theta_grid=(0.5, 1.5), algorithms=("sequential", "complete",
                                                            "parallel_down", "parallel_up"))
    records = theta_sweep(config)
    lookup = {(r.algorithm, r.instance_id, r.theta): r.mean_iterations for r in records}
    for alg in config.algorithms:
        for i in range(config.instances_per_n):
            assert abs(lookup[(alg, i, 0.5)] - lookup[(alg, i, 1.5)]) <= 1.0


def test_best_theta_prefers_one_on_ties():
    rows = [
        SweepRecord("complete", 3, 0, t, its, 1.0, 1.0)
        for t, its in [(0.5, 100.0), (1.0, 80.0), (1.5, 80.0)]
    ]
    best = best_theta(rows)
    assert best[0].best_theta == 1.0
    assert best[0].median_iterations == 80.0


def test_best_theta_empty_rejected():
    with pytest.raises(InvalidInputError):
        best_theta([])


def test_compare_requires_full_theta_table():
    config = desk_config()
    with pytest.raises(InvalidInputError):
        compare(config, {("sequential", 3): 1.0})


def test_compare_records_shape_and_determinism():
    config = desk_config(instances_per_n=2)
    thetas = {(alg, 3): 1.0 for alg in config.algorithms}
    a = compare(config, thetas)
    b = compare(config, thetas, jobs=2)
    assert a == b
    assert len(a) == 2 * len(config.algorithms)
    for r in a:
        assert 0.0 <= r.pierra_angle_rad <= np.pi / 2
        assert r.mean_iterations >= 0
    # the pierra angle is a per-instance quantity, equal across algorithms
    by_instance = {}
    for r in a:
        by_instance.setdefault(r.instance_id, set()).add(r.pierra_angle_rad)
    assert all(len(v) == 1 for v in by_instance.values())


def test_aggregate_singleton_and_constant():
    one = CompareRecord("complete", 3, 0, 0.5, 1.0, 42.0)
    assert aggregate_by_n([one]) == [AggregateRecord("complete", 3, 42.0)]
    same = [CompareRecord("complete", 3, i, 0.5, 1.0, 7.0) for i in range(4)]
    assert aggregate_by_n(same)[0].mean_iterations == 7.0


def test_aggregate_empty_rejected():
    with pytest.raises(InvalidInputError):
        aggregate_by_n([])
