import math

import numpy as np
import pytest
from scipy.integrate import quad

from modsym.contfrac import SignedWord
from modsym.thermo import (
    BetaOutOfDomain,
    BracketFailure,
    NonHyperbolic,
    NumericsConfig,
    TransferOperator,
    gibbs_moments,
    hyperbolic_log_eigenvalue,
    potential_I_on_cylinder,
    pressure_collocation,
    pressure_cylinder,
    solve_beta,
)

GOLDEN_I = 2 * math.log((3 + math.sqrt(5)) / 2)


def test_config_validation():
    with pytest.raises(ValueError):
        NumericsConfig(digit_cutoff=0)
    with pytest.raises(ValueError):
        NumericsConfig(tail_mode="nope")
    with pytest.raises(ValueError):
        NumericsConfig(tolerance=-1)


def test_hyperbolic_log_eigenvalue():
    assert math.isclose(hyperbolic_log_eigenvalue(3), math.log((3 + math.sqrt(5)) / 2))
    with pytest.raises(NonHyperbolic):
        hyperbolic_log_eigenvalue(2)
    # huge traces: log lambda ~ log T
    T = 10**200
    assert math.isclose(hyperbolic_log_eigenvalue(T), math.log(10) * 200, rel_tol=1e-12)


def test_potential_on_cylinder_examples():
    assert math.isclose(potential_I_on_cylinder(SignedWord((-1, 1))), GOLDEN_I)
    # (-2, 2): trace +-6, eigenvalue 3 + 2*sqrt(2)
    assert math.isclose(
        potential_I_on_cylinder(SignedWord((-2, 2))), 2 * math.log(3 + 2 * math.sqrt(2))
    )
    # odd word (k): doubled matrix trace k^2 + 2
    val = potential_I_on_cylinder(SignedWord((3,)))
    assert math.isclose(val, math.log((11 + math.sqrt(117)) / 2))


def test_potential_rotation_invariance():
    w = (-1, 2, -3, 1)
    vals = {
        round(potential_I_on_cylinder(SignedWord(w[i:] + w[:i])), 12)
        for i in range(len(w))
    }
    assert len(vals) == 1


def test_potential_guards():
    with pytest.raises(ValueError):
        potential_I_on_cylinder(SignedWord(()))
    with pytest.raises(ValueError):
        potential_I_on_cylinder(SignedWord((1, 2)))


def test_gauss_pressure_zero(level1, cfg):
    assert abs(pressure_collocation(level1, [], 1.0, cfg).value) < 1e-6


def test_beta_domain_guard(level1, cfg):
    with pytest.raises(BetaOutOfDomain):
        pressure_collocation(level1, [], 0.4, cfg)
    with pytest.raises(BetaOutOfDomain):
        pressure_cylinder(level1, [], 0.5, cfg)


def test_pressure_monotone_in_beta(level11, cfg):
    values = [
        pressure_collocation(level11, [0.03, -0.02], b, cfg).value
        for b in (0.7, 0.9, 1.1, 1.4, 2.0)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_collocation_matches_gkw_eigenfunction(level1, cfg):
    """At beta=1 the operator fixes 1/(1+y) with eigenvalue 1 (Gauss-Kuzmin)."""
    op = TransferOperator(level1, cfg)
    L = op.assemble([], 1.0)
    nodes = op.nodes
    f = 1.0 / (1.0 + nodes)
    vec = np.concatenate([f, f])  # both sign vertices carry the density
    out = L @ vec
    assert np.abs(out - vec).max() < 1e-6


def test_discretization_stability(level11):
    """Collocation value stable under m -> m+8 and K -> 2K."""
    base = NumericsConfig(digit_cutoff=200, collocation_degree=24)
    finer = NumericsConfig(digit_cutoff=400, collocation_degree=32)
    for beta in (0.8, 1.3):
        a = pressure_collocation(level11, [0.02, 0.01], beta, base).value
        b = pressure_collocation(level11, [0.02, 0.01], beta, finer).value
        assert abs(a - b) < 1e-7


def test_tail_mode_truncate_converges(level1):
    """Truncation approaches the zeta-tail value as K grows.

    The truncation error scales like K^(1-2*beta), so the comparison uses
    beta = 2 where K = 4000 leaves an error far below the assertion.
    """
    ref = pressure_collocation(level1, [], 2.0, NumericsConfig()).value
    big = pressure_collocation(
        level1, [], 2.0, NumericsConfig(digit_cutoff=4000, tail_mode="truncate")
    ).value
    assert abs(ref - big) < 1e-8
    # at beta = 0.9 the truncation error is visible and shrinks with K
    ref9 = pressure_collocation(level1, [], 0.9, NumericsConfig()).value
    errs = [
        abs(
            pressure_collocation(
                level1, [], 0.9, NumericsConfig(digit_cutoff=K, tail_mode="truncate")
            ).value
            - ref9
        )
        for K in (50, 500)
    ]
    assert errs[1] < errs[0]


def test_solve_beta_origin(level11, cfg):
    assert abs(solve_beta(level11, [0.0, 0.0], cfg) - 1.0) < 1e-3


def test_solve_beta_residual(level11, cfg):
    b = solve_beta(level11, [0.04, 0.02], cfg)
    assert abs(pressure_collocation(level11, [0.04, 0.02], b, cfg).value) <= 10 * cfg.tolerance


def test_moments_lyapunov_oracle(level1, level11, cfg):
    oracle, err = quad(lambda x: -2 * math.log(x) / ((1 + x) * math.log(2)), 0, 1)
    assert err < 1e-9
    for lvl in (level1, level11):
        mom = gibbs_moments(lvl, None, cfg)
        assert abs(mom.mean_i - oracle) < 1e-3
        assert np.abs(mom.alpha).max() < 1e-3 if lvl.two_g else mom.alpha.size == 0


def test_moments_match_beta_gradient(level11, cfg):
    """alpha(t) equals the finite-difference gradient of beta_G."""
    t = np.array([0.05, -0.02])
    mom = gibbs_moments(level11, t, cfg)
    h = 1e-3
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        grad = (solve_beta(level11, t + e, cfg) - solve_beta(level11, t - e, cfg)) / (2 * h)
        assert abs(grad - mom.alpha[i]) < 1e-3


def test_cylinder_hand_example(level1):
    """n=1, K=1: Z_1 = 2 exp(-beta * log((3+sqrt 5)/2)), closed form."""
    cfg = NumericsConfig(digit_cutoff=1, cylinder_depth=1)
    lam = (3 + math.sqrt(5)) / 2
    for beta in (0.8, 1.0, 1.7):
        est = pressure_cylinder(level1, [], beta, cfg)
        assert est.provenance["method"] == "cylinder-enumerate"
        assert math.isclose(est.value, math.log(2 * lam**-beta))


def test_cylinder_cross_estimator(level1, cfg):
    cyl_cfg = NumericsConfig(digit_cutoff=50, cylinder_depth=10)
    for beta, tol in ((1.0, 0.02), (2.0, 0.05)):
        cyl = pressure_cylinder(level1, [], beta, cyl_cfg).value
        col = pressure_collocation(level1, [], beta, cfg).value
        assert abs(cyl - col) < tol


def test_cylinder_modes_agree(level2):
    cfg = NumericsConfig(digit_cutoff=6, cylinder_depth=6, tail_mode="truncate")
    e = pressure_cylinder(level2, [], 1.1, cfg, mode="enumerate").value
    g = pressure_cylinder(level2, [], 1.1, cfg, mode="grid").value
    assert abs(e - g) < 0.02


def test_cylinder_provenance(level1):
    cfg = NumericsConfig(digit_cutoff=2, cylinder_depth=3)
    est = pressure_cylinder(level1, [], 1.0, cfg)
    prov = est.provenance
    assert {"method", "K", "m", "n", "tolerance", "tail"} <= set(prov)
    assert len(prov["partition_sums"]) == 3
    assert math.isclose(
        prov["raw_rate"], math.log(prov["partition_sums"][-1]) / 3
    )


def test_bracket_failure(level1):
    # beta range capped below the root: no sign change reachable
    cfg = NumericsConfig(beta_max=0.9)
    with pytest.raises(BracketFailure):
        solve_beta(level1, [], cfg)


def test_t_vector_validation(level11, cfg):
    with pytest.raises(ValueError):
        pressure_collocation(level11, [0.1], 1.0, cfg)
