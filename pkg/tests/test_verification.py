import dataclasses

import numpy as np
import pytest

import asymreg as ar

E2 = ar.euclidean(2)
E5 = ar.euclidean(5)
D = ar.poincare_disk()


# ---------------------------------------------------------------------------
# axioms

def test_space_axioms_pass_all_models():
    for space in (E2, E5, D):
        rep = ar.check_space_axioms(space, samples=600, seed=1)
        assert rep.passed and rep.verdict == ar.PASS, rep.to_json()


def test_space_axioms_catch_broken_combine():
    def bad(space, x, y, lam):
        return ar.combine(space, x, y, lam * lam)
    rep = ar.check_space_axioms(E2, samples=300, seed=3, combine_override=bad)
    assert not rep.passed
    axioms = {dict(f.inputs)["axiom"] for f in rep.failures}
    assert "W2" in axioms


def test_space_axioms_deterministic():
    a = ar.check_space_axioms(D, samples=200, seed=42)
    b = ar.check_space_axioms(D, samples=200, seed=42)
    assert a.to_json() == b.to_json()


# ---------------------------------------------------------------------------
# uniform convexity

def test_uc_implication_passes_both_models():
    for space in (E2, D):
        rep = ar.check_uc_implication(space, samples=800, seed=2)
        assert rep.passed, rep.to_json()
        assert rep.samples > 700


def test_uc_implication_rejects_optimistic_modulus():
    rep = ar.check_uc_implication(E2, samples=2000, seed=7,
                                  eta=ar.eta_quadratic(2))
    assert not rep.passed
    assert len(rep.failures) >= 1


def test_uc_implication_hilbert_modulus_on_disk():
    # the inner-product modulus is valid on the disk as well
    rep = ar.check_uc_implication(D, samples=800, seed=5, eta=ar.eta_hilbert())
    assert rep.passed, rep.to_json()


def test_dyadic_implication_strict_and_weak():
    strict = ar.check_dyadic_uc_implication(
        E2, ar.eta_to_eta1(ar.eta_quadratic()), conclusion_strict=True,
        samples=1000, seed=0)
    assert strict.passed, strict.to_json()
    weak = ar.check_dyadic_uc_implication(
        E2, ar.eta3_to_eta2(ar.eta3_affine(2, 3)), conclusion_strict=False,
        samples=1000, seed=1)
    assert weak.passed, weak.to_json()
    # constructed half of the samples must activate the premise
    assert any("activations" in n for n in strict.notes)
    acts = int(strict.notes[0].split()[2])
    assert acts >= 500


def test_dyadic_implication_needs_euclidean():
    with pytest.raises(ValueError):
        ar.check_dyadic_uc_implication(D, ar.eta1_affine(2, 3), True)


def test_dyadic_implication_rejects_optimistic_eta1():
    # eta1 = 1 claims far too much contraction
    rep = ar.check_dyadic_uc_implication(E2, ar.eta1_affine(0, 1),
                                         conclusion_strict=True,
                                         samples=1000, seed=2)
    assert not rep.passed


# ---------------------------------------------------------------------------
# mapping checks

def test_nonexpansive_catalog():
    cases = [(E2, ar.euclidean_rotation((0.0, 0.0), 2.0)),
             (E2, ar.euclidean_reflection_average((1.0, 0.0))),
             (E2, ar.metric_projection((0.0, 0.0), 1.0)),
             (D, ar.poincare_rotation((0.2, 0.1), 1.0)),
             (D, ar.metric_projection((0.0, 0.0), 0.5))]
    for space, m in cases:
        rep = ar.check_nonexpansive(space, m, samples=300, seed=0)
        assert rep.passed, (m.kind, rep.to_json())


def test_omega_majorization_pass_and_fail():
    m = ar.euclidean_rotation((0.0, 0.0), 2.0)
    x = ar.make_point(E2, (0.25, -0.5))
    good = ar.check_omega_majorization(E2, m, x, ar.omega_for_nonexpansive(3),
                                       samples=300, seed=1)
    assert good.passed
    bad = ar.check_omega_majorization(E2, m, x, ar.omega_affine(0, 0),
                                      samples=300, seed=1)
    assert not bad.passed


# ---------------------------------------------------------------------------
# orbit audits

def test_lemma_inequalities_dense_and_fallback(disk_config):
    dense = ar.trajectory_for(disk_config, 1500, dense=True, record_ref=True)
    rep = ar.check_lemma_inequalities(dense)
    assert rep.passed, rep.to_json()
    sparse = ar.trajectory_for(disk_config, 1500)
    rep = ar.check_lemma_inequalities(sparse)
    assert rep.passed, rep.to_json()


def test_lemma_inequalities_catch_doctored_orbit(km_config):
    traj = ar.trajectory_for(km_config, 500, dense=True, record_ref=True)
    traj.residuals[100] = 10.0     # breaks (b) at n=99 and the 2b cap
    rep = ar.check_lemma_inequalities(traj)
    assert not rep.passed
    kinds = {dict(f.inputs)["inequality"] for f in rep.failures}
    assert "b" in kinds and "residual-cap" in kinds


def test_lemma_inequalities_catch_bad_reference_distances(km_config):
    traj = ar.trajectory_for(km_config, 300, dense=True, record_ref=True)
    traj.ref_distances[200] = traj.ref_distances[199] + 1.0
    rep = ar.check_lemma_inequalities(traj)
    kinds = {dict(f.inputs)["inequality"] for f in rep.failures}
    assert "c-step" in kinds


# ---------------------------------------------------------------------------
# rate soundness

def test_phi_soundness_small_case(km_config):
    rr, rep = ar.check_phi_soundness(km_config, 0.5)
    assert rep.passed and rep.verdict == ar.PASS
    assert (rr.P, rr.phi) == (512, 2052)
    assert rr.empirical_first_hit is not None
    assert rr.tightness_ratio == rr.phi / max(1, rr.empirical_first_hit)


def test_phi_soundness_shortcut(km_config):
    rr, rep = ar.check_phi_soundness(km_config, 3.0)
    assert rep.passed
    assert rr.phi == 0


def test_phi_soundness_unverified_at_scale(km_config):
    small = dataclasses.replace(km_config, caps=ar.Caps(max_steps=1000))
    rr, rep = ar.check_phi_soundness(small, 0.5)
    assert rep.verdict == ar.UNVERIFIED_AT_SCALE
    assert rep.passed                      # warn, not fail
    assert rr.phi == 2052


def test_phi_soundness_rejects_doctored_orbit(km_config):
    traj = ar.trajectory_for(km_config, 3052)
    traj.residuals[2500] = 1.0
    rr, rep = ar.check_phi_soundness(km_config, 0.5, trajectory=traj)
    assert not rep.passed
    assert dict(rep.failures[0].inputs)["n"] == 2500


def test_phi_soundness_fails_on_broken_theta(km_config):
    sched = km_config.schedule
    bad = dataclasses.replace(
        km_config,
        schedule=ar.Schedule(sched.lambda_seq, sched.s_seq,
                             ar.theta_linear("1/2"),
                             sched.L, sched.N0, sched.gamma))
    rr, rep = ar.check_phi_soundness(bad, 0.5)
    assert not rep.passed


def test_delta_witness_small_case(km_config):
    deltas, rep = ar.check_delta_witness(km_config, 0.5, [0, 10, 100])
    assert rep.passed
    assert deltas == {0: 2048, 10: 2088, 100: 2448}
    assert len(rep.notes) == 3


def test_delta_witness_unverified_at_scale(km_config):
    small = dataclasses.replace(km_config, caps=ar.Caps(max_steps=1000))
    deltas, rep = ar.check_delta_witness(small, 0.5, [0])
    assert rep.verdict == ar.UNVERIFIED_AT_SCALE
    assert deltas == {0: 2048}


def test_delta_witness_rejects_flat_orbit(disk_config):
    deltas, _ = ar.check_delta_witness(disk_config, 0.25, [0])
    traj = ar.trajectory_for(disk_config, deltas[0])
    traj.residuals[:] = 1.0
    _, rep = ar.check_delta_witness(disk_config, 0.25, [0], trajectory=traj)
    assert not rep.passed


def test_reports_are_deterministic_json(km_config):
    _, a = ar.check_phi_soundness(km_config, 0.5)
    _, b = ar.check_phi_soundness(km_config, 0.5)
    assert a.to_json() == b.to_json()


def test_sample_point_targets_regions():
    rng_pts = [ar.sample_point(E5, __import__("random").Random(f"{i}")) for i in range(50)]
    assert all(sum(c * c for c in p.coords) <= 100.0 + 1e-9 for p in rng_pts)
    origin = ar.make_point(D, (0.0, 0.0))
    for i in range(50):
        p = ar.sample_point(D, __import__("random").Random(i))
        assert ar.dist(D, origin, p) <= 5.0 + 1e-9
    x = ar.make_point(D, (0.3, 0.2))
    for i in range(50):
        y = ar.sample_point_near(D, __import__("random").Random(i), x, 2.0)
        assert ar.dist(D, x, y) <= 2.0 + 1e-9
