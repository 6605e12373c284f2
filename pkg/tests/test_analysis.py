import random
from fractions import Fraction

import pytest

from csw.analysis import (
    EpsExperimentConfig,
    KExperimentConfig,
    KSeparationConfig,
    SeparationConfig,
    basis_constant,
    check_biorthogonality,
    coherence_report,
    random_rational_vector,
    run_K_experiment,
    run_eps_experiment,
    verify_separation_bound,
    well_definedness_report,
)
from csw.errors import (
    CaptureUnavailableError,
    ConfigInvalidError,
    NotBiorthogonalError,
    WrongSpaceKindError,
)
from csw.hull import dual_norm
from csw.norming import Functional, NormingFamily, Origin, build_eps_family, global_dual, norm
from csw.schemes import build_scheme, validate_type
from csw.vectors import SparseVector, pair, parse_vector

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# biorthogonality sweeps

def test_biorthogonality_width6(eps_half_depth1):
    report = check_biorthogonality(eps_half_depth1)
    assert report.passed
    assert report.meta["offdiagonal_max"] == "1/2"


def test_biorthogonality_two_thirds(scheme_depth2):
    family = build_eps_family(scheme_depth2, Fraction(2, 3))
    report = check_biorthogonality(family)
    assert report.passed
    assert report.claim("offdiagonal_bounded").rhs == Fraction(2, 3)
    assert report.claim("offdiagonal_attained").passed


def test_biorthogonality_rejects_scaled_cut_kind(k2_tiny):
    with pytest.raises(WrongSpaceKindError):
        check_biorthogonality(k2_tiny)


# ---------------------------------------------------------------------------
# basis constants

def test_hand_injected_sup_family_has_constant_one(scheme_tiny):
    top = scheme_tiny.top
    fam = NormingFamily(
        scheme=scheme_tiny, space_kind="k", parameter=Fraction(2),
        families={top: [
            Functional(SparseVector.unit(0), top, (Origin("unit", 1, alpha=0),)),
            Functional(SparseVector.unit(1), top, (Origin("unit", 1, alpha=1),)),
        ]})
    assert basis_constant(fam).value == 1


def test_width8_constant_is_exactly_two(k2_wide8):
    result = basis_constant(k2_wide8)
    assert result.value == 2
    assert not result.skipped
    # the attaining vector is a unit vector whose prefix doubles
    assert norm(result.attaining, k2_wide8) == 1
    assert norm(result.attaining.restrict_below(result.cut), k2_wide8) == 2


def test_tiny_k_constant_is_one(k2_tiny):
    assert basis_constant(k2_tiny).value == 1


def test_prefix_inequality_holds_on_random_vectors(k2_wide8):
    rng = random.Random(23)
    constant = basis_constant(k2_wide8).value
    universe = k2_wide8.scheme.universe_size
    for _ in range(50):
        x = random_rational_vector(rng, universe)
        total = norm(x, k2_wide8)
        for cut in range(universe + 1):
            assert norm(x.restrict_below(cut), k2_wide8) <= constant * total


# ---------------------------------------------------------------------------
# capture experiments

def test_eps_experiment_width6_frozen_table(scheme_depth1, eps_half_depth1):
    report = run_eps_experiment(scheme_depth1, eps_half_depth1,
                                EpsExperimentConfig(n=2, m=2))
    assert report.passed
    assert report.norms["w_local"] == HALF
    assert report.norms["w_all_functionals"] == 1
    table = {label: value for label, value in report.pairings.items()}
    assert table["first_alternating/a0"] == 0
    assert table["second_alternating/a1"] == 0
    copies = sorted(str(v) for k, v in table.items() if k.startswith("copy"))
    assert copies == ["-1/2", "-1/2", "1/2", "1/2"]
    assert report.claim("form4_bounded_by_1_over_m").lhs == HALF


def test_eps_experiment_n1(scheme_depth1, eps_half_depth1):
    report = run_eps_experiment(scheme_depth1, eps_half_depth1,
                                EpsExperimentConfig(n=1, m=1))
    assert report.passed
    assert report.claim("form2_pairs_to_zero").lhs == 0


def test_eps_experiment_nontrivial_pattern(scheme_depth3, eps_half_depth3):
    report = run_eps_experiment(
        scheme_depth3, eps_half_depth3,
        EpsExperimentConfig(n=1, m=1, pattern=parse_vector("2:1,3:1/3")))
    assert report.passed


def test_eps_experiment_root_only_pattern(scheme_depth3, eps_half_depth3):
    report = run_eps_experiment(
        scheme_depth3, eps_half_depth3,
        EpsExperimentConfig(n=1, m=1, pattern=SparseVector.unit(0)))
    assert report.passed
    assert report.norms["w_local"] == 0
    assert all(v == 0 for v in report.pairings.values())


def test_eps_experiment_config_validation(scheme_depth1, eps_half_depth1, k2_wide8):
    with pytest.raises(ConfigInvalidError):
        run_eps_experiment(scheme_depth1, eps_half_depth1,
                           EpsExperimentConfig(n=2, m=3))
    with pytest.raises(CaptureUnavailableError):
        run_eps_experiment(scheme_depth1, eps_half_depth1,
                           EpsExperimentConfig(n=3, m=3))
    with pytest.raises(WrongSpaceKindError):
        run_eps_experiment(k2_wide8.scheme, k2_wide8, EpsExperimentConfig(n=2, m=2))


def test_k_experiment_width8_frozen_values(scheme_wide8, k2_wide8):
    report = run_K_experiment(scheme_wide8, k2_wide8,
                              KExperimentConfig(n=4, L=Fraction(5, 4)))
    assert report.passed
    assert report.norms["v"] == 4
    assert report.norms["w"] == 2
    assert report.norms["ratio"] == 2
    assert report.claim("w_norm_at_most_n_over_K_plus_1").rhs == 3
    assert report.meta["spread_witness"] is not None


def test_k_experiment_degenerate_n1_fails_config(scheme_wide8, k2_wide8):
    with pytest.raises(ConfigInvalidError):
        run_K_experiment(scheme_wide8, k2_wide8,
                         KExperimentConfig(n=1, L=Fraction(5, 4)))


def test_k_experiment_slack_condition_enforced(scheme_wide8, k2_wide8):
    with pytest.raises(ConfigInvalidError):
        run_K_experiment(scheme_wide8, k2_wide8,
                         KExperimentConfig(n=4, L=Fraction(3, 2)))


def test_k_experiment_kind_check(scheme_depth1, eps_half_depth1):
    with pytest.raises(WrongSpaceKindError):
        run_K_experiment(scheme_depth1, eps_half_depth1,
                         KExperimentConfig(n=4, L=Fraction(5, 4)))


# ---------------------------------------------------------------------------
# separation bounds

def _unit_system(universe):
    return [SparseVector.unit(i) for i in range(universe)]


def test_separation_vacuous_at_tau_equal_eps(eps_half_depth1):
    ys = _unit_system(6)
    ystars = [global_dual(eps_half_depth1, i).vector for i in range(6)]
    config = SeparationConfig(tau=HALF, dual_bound=Fraction(1), n=2, m=2)
    report = verify_separation_bound(eps_half_depth1, ys, config, ystars=ystars)
    assert report.meta["vacuous"] is True
    assert report.claim("separation_lower_bound").passed


def test_separation_tau_zero_exact(eps_half_depth1):
    ys = _unit_system(6)
    ystars = _unit_system(6)
    H = [f.vector for f in eps_half_depth1.top_functionals]
    bound = max(dual_norm(y, H)[0] for y in ystars)
    config = SeparationConfig(tau=Fraction(0), dual_bound=bound, n=2, m=2)
    report = verify_separation_bound(eps_half_depth1, ys, config, ystars=ystars)
    assert config.delta() == Fraction(1) / bound
    assert report.norms["combination"] == HALF
    assert report.claim("separation_lower_bound").passed
    assert not report.meta["vacuous"]


def test_separation_two_term_degenerate(eps_half_depth1):
    ys = _unit_system(6)
    ystars = _unit_system(6)
    H = [f.vector for f in eps_half_depth1.top_functionals]
    bound = max(dual_norm(y, H)[0] for y in ystars)
    config = SeparationConfig(tau=Fraction(0), dual_bound=bound, n=0, m=1)
    report = verify_separation_bound(eps_half_depth1, ys, config, ystars=ystars,
                                     indices=(0, 1))
    assert report.norms["combination"] == 1
    assert report.claim("separation_lower_bound").passed


def test_separation_rejects_non_biorthogonal(eps_half_depth1):
    ys = [SparseVector.unit(0), SparseVector.unit(0)]
    ystars = [SparseVector.unit(0), SparseVector.unit(0)]
    config = SeparationConfig(tau=Fraction(0), dual_bound=Fraction(3), n=0, m=1)
    with pytest.raises(NotBiorthogonalError) as err:
        verify_separation_bound(eps_half_depth1, ys, config, ystars=ystars)
    assert err.value.witness == (0, 1)


def test_k_separation_engineered_refutation(k2_wide8):
    ys = _unit_system(8)
    config = KSeparationConfig(kprime=Fraction(1), L=Fraction(5, 4), n=4)
    report = verify_separation_bound(k2_wide8, ys, config)
    assert not report.claim("prefix_bounded_by_L_times_difference").passed
    assert report.claim("difference_at_least_half_inverse_kprime").passed
    assert report.norms["v"] == 4 and report.norms["w"] == 2


def test_k_separation_consistent_case(k2_wide8):
    ys = [SparseVector.unit(0), SparseVector.unit(1)]
    config = KSeparationConfig(kprime=Fraction(1), L=Fraction(5, 4), n=1)
    report = verify_separation_bound(k2_wide8, ys, config)
    assert report.passed


def test_k_separation_requires_normalized(k2_wide8):
    ys = [SparseVector.unit(0).scale(2), SparseVector.unit(1)]
    config = KSeparationConfig(kprime=Fraction(1), L=Fraction(5, 4), n=1)
    with pytest.raises(NotBiorthogonalError):
        verify_separation_bound(k2_wide8, ys, config)


# ---------------------------------------------------------------------------
# sweeps and report plumbing

def test_coherence_depth2_both_kinds(eps_half_depth2, k2_depth2):
    for family in (eps_half_depth2, k2_depth2):
        report = coherence_report(family, lp_every=7)
        assert report.passed
        assert report.meta["hull_instances"] > 0


def test_well_definedness_sweep(eps_half_depth2, k2_depth2):
    for family in (eps_half_depth2, k2_depth2):
        report = well_definedness_report(family, samples=60, seed=3)
        assert report.passed
        assert report.meta["samples"] > 0


def test_report_rendering(scheme_depth1, eps_half_depth1):
    report = run_eps_experiment(scheme_depth1, eps_half_depth1,
                                EpsExperimentConfig(n=2, m=2))
    payload = report.to_json()
    assert payload["pass"] is True
    assert payload["norms"]["w_local"] == "1/2"
    rows = report.to_csv_rows()
    assert rows[0][0] == "claim"
    assert len(rows) == len(report.claims) + 1
