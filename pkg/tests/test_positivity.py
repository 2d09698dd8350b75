import numpy as np
import pytest

from covmap import catalog
from covmap.positivity import (
    block_positivity_search,
    block_value,
    classify,
    cp_inequality_values,
    cuboid_necessary,
    diagonal_necessary,
    inverse_reduction,
    is_cop,
    is_cp,
    reduction_sufficient,
    reduction_witness,
    witness_value,
)
from covmap.superop import apply_map, identity_map, mat_to_choi, maximally_entangled_projector, transpose_map


def test_is_cp_identity():
    ok, mn = is_cp(mat_to_choi(identity_map(3)))
    assert ok and mn >= -1e-12


def test_is_cp_rejects_nonhermitian():
    with pytest.raises(ValueError):
        is_cp(np.array([[0, 1], [0, 0]], dtype=complex))


def test_s3_witness_point_not_cp():
    fam = catalog.s3_family()
    ok, mn = is_cp(fam.make([1, -1, -1]).choi())
    assert not ok and mn < -0.5
    # the printed system pins the violated inequality
    vals = catalog.s3_cp_system(1, -1, -1)
    assert vals[3] == -2 and (vals[:3] >= 0).all()


def test_is_cop_transposition():
    t = transpose_map(2)
    ok_cop, _ = is_cop(t)
    assert ok_cop
    ok_cp, _ = is_cp(mat_to_choi(t))
    assert not ok_cp


def test_mu_cop_region_point():
    ok, _ = is_cop(catalog.mu_map_matrix(3, 0.1, 0.2))  # inside the printed region
    assert ok
    ok_11, _ = is_cop(catalog.mu_map_matrix(3, 1.0, 1.0))
    assert not ok_11
    ok_cp, eigs = catalog.mu_cp(3, 1.0, 1.0)
    assert ok_cp and np.allclose(sorted(eigs), [0, 0, 3])


def test_cp_inequalities_match_printed_forms(rng):
    fam = catalog.s3_family()
    for _ in range(10):
        lid, lsgn, llam = rng.uniform(-1.5, 1.5, 3)
        cm = fam.make([lid, lsgn, llam])
        values, exact = cp_inequality_values(cm, fam.rep, fam.table)
        assert exact
        by_label = {}
        for label, _, v in values:
            by_label.setdefault(label, []).append(v)
        printed = catalog.s3_cp_system(lid, lsgn, llam)
        assert abs(by_label["id"][0] - 3 * printed[3]) < 1e-9
        assert abs(by_label["sgn"][0] - 3 * printed[2]) < 1e-9
        for v in by_label["lam"]:
            assert abs(v - 3 * printed[1]) < 1e-9


def test_cp_inequalities_grid_agreement():
    fam = catalog.s3_family()
    grid = np.linspace(-1.5, 1.5, 21)
    for lsgn in grid:
        for llam in grid:
            cm = fam.make([1.0, lsgn, llam])
            values, _ = cp_inequality_values(cm, fam.rep, fam.table)
            pred = all(v >= -1e-9 for _, _, v in values)
            ok, _ = is_cp(cm.choi())
            assert pred == ok, (lsgn, llam)


def test_cp_inequalities_all_ones():
    fam = catalog.quaternion_family()
    cm = fam.make([1.0, 1.0, 1.0, 1.0])
    values, _ = cp_inequality_values(cm, fam.rep, fam.table)
    assert all(v >= -1e-12 for _, _, v in values)


def test_cuboid():
    assert cuboid_necessary(("id", "a", "b"), (1, 1, 1))
    assert not cuboid_necessary(("id", "a", "b"), (1, -1.01, 0))


def test_diagonal_necessary():
    ok, _ = diagonal_necessary(identity_map(2))
    assert ok
    fam = catalog.s3_family()
    ok_bad, mn = diagonal_necessary(fam.make([1, 2, 0]).matrix())
    assert not ok_bad and mn < -0.4
    q = catalog.quaternion_family()
    ok_q, _ = diagonal_necessary(q.make([1, 0.5, -0.5, 0.2]).matrix())
    assert ok_q


def test_block_value_basics(rng):
    x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    x /= np.linalg.norm(x)
    y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    y /= np.linalg.norm(y)
    assert abs(block_value(np.eye(4, dtype=complex), x, y) - 1) < 1e-12


def test_block_value_reproduces_diagonal_entries():
    fam = catalog.s3_family()
    m = fam.make([1.0, 0.7, -0.3]).matrix()
    j = mat_to_choi(m)
    d = 2
    for i in range(d):
        for jdx in range(d):
            e_i = np.eye(d)[i]
            e_j = np.eye(d)[jdx]
            # <e_i (x) e_j| J |e_i (x) e_j> equals the (jj, ii) map-matrix entry
            assert abs(block_value(j, e_i, e_j) - m[jdx * d + jdx, i * d + i].real) < 1e-12


def test_necessity_witness_value():
    for d, eps in ((3, 0.1), (4, 0.01)):
        beta = 0.2
        alpha, x, y = catalog.mu_necessity_witness(d, beta, eps)
        j = catalog.mu_choi(d, alpha, beta).astype(complex)
        val = block_value(j, x, y)
        assert abs(val - (-eps / d)) < 1e-12
        assert abs(d * val - (-eps)) < 1e-12


def test_block_search_identity_matrix():
    val, _, _ = block_positivity_search(np.eye(4, dtype=complex), restarts=8, seed=3)
    assert abs(val - 1) < 1e-9


def test_block_search_identity_map_nonnegative():
    j = mat_to_choi(identity_map(2))
    val, _, _ = block_positivity_search(j, restarts=16, seed=3)
    assert val >= -1e-12


def test_block_search_finds_s3_violation():
    fam = catalog.s3_family()
    j = fam.make([1.0, 1.2, 0.0]).choi()
    val, x, y = block_positivity_search(j, seed=0)
    assert val < -1e-3
    assert abs(block_value(j, x, y) - val) < 1e-10  # witness pair reproduces the value


def test_block_search_mu_inside_region():
    j = catalog.mu_choi(3, -0.4, 1.0).astype(complex)
    val, _, _ = block_positivity_search(j, seed=0)
    assert val >= -1e-8


def test_block_search_deterministic():
    fam = catalog.s3_family()
    j = fam.make([1.0, 0.9, -0.9]).choi()
    a = block_positivity_search(j, seed=42)
    b = block_positivity_search(j, seed=42)
    assert a[0] == b[0]
    assert np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])


def test_inverse_reduction():
    assert np.abs(inverse_reduction(np.eye(3)) - 0.5 * np.eye(3)).max() < 1e-14
    p = np.array([[1, 0], [0, 0]], dtype=complex)
    assert np.abs(inverse_reduction(p) - (np.eye(2) - p)).max() < 1e-14
    rng = np.random.default_rng(5)
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    reduction = np.trace(x) * np.eye(3) - x
    assert np.abs(inverse_reduction(reduction) - x).max() < 1e-12


def test_reduction_witness_identity_map():
    j = mat_to_choi(identity_map(2))
    w = reduction_witness(j, 1.0)
    eigs = np.sort(np.linalg.eigvalsh(w))
    assert np.allclose(eigs, [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_reduction_witness_s3_point():
    fam = catalog.s3_family()
    j = fam.make([1, -1, -1]).choi()
    w = reduction_witness(j, 1.0)
    assert np.linalg.eigvalsh(w).min() >= -1e-10


def test_trace_scaling_identity(rng):
    fam = catalog.s4_family()
    cm = fam.make([1.0, 0.3, -0.2, 0.6])
    x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert abs(np.trace(apply_map(cm.matrix(), x)) - np.trace(x)) < 1e-12


def test_reduction_system_equivalence(rng):
    fam = catalog.s3_family()
    for _ in range(25):
        lsgn, llam = rng.uniform(-2, 2, 2)
        cm = fam.make([1.0, lsgn, llam])
        ok, _ = reduction_sufficient(cm.choi(), 1.0)
        printed = catalog.s3_reduction_system(1.0, lsgn, llam)
        assert ok == bool((printed >= -1e-12).all())
    assert np.allclose(catalog.s3_reduction_system(1, -1, -1), [2, 0, 0, 4])


def test_witness_value():
    fam = catalog.s3_family()
    j = fam.make([1, -1, -1]).choi()
    val = witness_value(j, maximally_entangled_projector(2))
    assert abs(val - (-1.0)) < 1e-12  # (l_sgn + 2 l_lam + l_id) / 2
    mixed = np.eye(4) / 4
    assert abs(witness_value(j, mixed) - np.trace(j).real / 4) < 1e-12
    with pytest.raises(ValueError):
        witness_value(j, np.eye(4))  # trace 4, not a state


def test_witness_value_separable_nonnegative(rng):
    fam = catalog.s3_family()
    cm = fam.make([1, -1, -1])
    report = classify(cm, seed=1)
    assert report.witness_flag
    j = cm.choi()
    for _ in range(50):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        y = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        x /= np.linalg.norm(x)
        y /= np.linalg.norm(y)
        product_state = np.outer(np.kron(x, y), np.kron(x, y).conj())
        val = witness_value(j, product_state)
        assert val >= -1e-10
        assert abs(val - block_value(j, x, y)) < 1e-12


def test_classify_examples():
    fam = catalog.s3_family()
    r1 = classify(fam.make([1, 0.5, -0.5]), seed=2)
    assert r1.exact_positive and r1.cp
    r2 = classify(fam.make([1, -1, -1]), seed=2)
    assert r2.exact_positive and not r2.cp and r2.witness_flag
    r3 = classify(fam.make([1, 1.5, 0]), seed=2)
    assert not r3.exact_positive and not r3.cuboid_necessary


def test_classify_rejects_complex():
    fam = catalog.s3_family()
    with pytest.raises(ValueError):
        classify(fam.make([1, 0.5 + 0.1j, 0]), seed=0)


def test_classify_degenerate_skips_search():
    fam = catalog.s3_family()
    r = classify(fam.make([-1, 0.2, 0.2]), seed=0)
    assert r.sampled_block_min is None
    assert not r.cuboid_necessary and not r.exact_positive


@pytest.mark.parametrize(
    "family_key,n_draws",
    [("s3", 1000), ("q", 1000), ("s4", 300), ("mu:3", 300)],
)
def test_implication_chain(family_key, n_draws):
    fam = catalog.family_by_key(family_key)
    rng = np.random.default_rng(hash(family_key) % 2**32)
    n_free = len(fam.labels) - 1
    for i in range(n_draws):
        free = rng.uniform(-1.5, 1.5, n_free)
        r = classify(fam.make([1.0, *free]), seed=(1, i), restarts=16, iters=120)
        if r.cp:
            assert r.sampled_block_min >= -1e-8
            assert r.cuboid_necessary and r.diagonal_necessary
        if r.reduction_sufficient:
            assert r.sampled_block_min >= -1e-8
