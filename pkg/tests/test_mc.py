import csv

import numpy as np
import pytest

from centropy import classes, linalg, mc, states
from centropy.entropy import entropy_of_spectrum, von_neumann
from centropy.rng import make_rng
from centropy.states import Spectrum


def independent_purity_mean(n, seed, chunk=100_000):
    """Mean Tr(rho^2) for Hilbert-Schmidt states, drawn with a separate generator."""
    gen = np.random.default_rng(seed)
    total = 0.0
    for start in range(0, n, chunk):
        k = min(chunk, n - start)
        g = gen.normal(size=(k, 4, 4)) + 1j * gen.normal(size=(k, 4, 4))
        m = g @ np.swapaxes(g.conj(), -1, -2)
        m /= np.real(np.trace(m, axis1=-2, axis2=-1))[:, None, None]
        total += np.sum(np.abs(m) ** 2)
    return total / n


def test_sample_hs_state_valid_and_reproducible():
    rho = mc.sample_hs_state(make_rng(42, 0))
    assert isinstance(rho, states.DensityMatrix)
    again = mc.sample_hs_state(make_rng(42, 0))
    assert rho.mat.tobytes() == again.mat.tobytes()


def test_hs_mean_purity():
    mats = mc.hs_matrices(make_rng(42, 0), 100_000)
    mean = float(np.mean(np.sum(np.abs(mats) ** 2, axis=(-2, -1))))
    reference = independent_purity_mean(1_000_000, seed=2024)
    assert mean == pytest.approx(reference, abs=0.02)
    # exact Hilbert-Schmidt value for N = 4: 2N / (N^2 + 1)
    assert mean == pytest.approx(8 / 17, abs=0.02)


def test_simplex_spectra():
    spectra = mc.simplex_spectra(make_rng(1, 0), 10_000)
    np.testing.assert_allclose(spectra.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(spectra >= 0)
    assert np.all(np.diff(spectra, axis=1) <= 0)
    # uniform on the simplex: each coordinate of the unsorted vector has mean 1/4
    assert spectra.mean() == pytest.approx(0.25, abs=1e-12)
    assert spectra[:, 0].mean() == pytest.approx(25 / 48, abs=0.01)  # E[max of 4 spacings]


def test_sample_as_state():
    rng = make_rng(3, 0)
    for _ in range(50):
        rho = mc.sample_as_state(rng)
        assert classes.is_abs_separable(rho.spectrum)
        assert von_neumann(rho) >= 1 - 1e-9


def test_as_acceptance_rate_positive():
    stats = mc.estimate_extreme("min-entropy-in-as", 20_000, seed=1)
    assert stats.n_accepted > 0
    assert 0 < stats.to_dict()["acceptance_rate"] <= 1


def test_distance_examples():
    assert mc.distance_from_I4(states.maximally_mixed()) == pytest.approx(0.0, abs=1e-15)
    far = Spectrum.normalized((0.809161, 0.0521141, 0.0595448, 0.0791805))
    near = Spectrum.normalized((0.00014347, 0.000551157, 0.436523, 0.562783))
    assert mc.distance_from_I4(states.comp_diagonal(far)) == pytest.approx(0.645966, abs=1e-6)
    assert mc.distance_from_I4(states.comp_diagonal(near)) == pytest.approx(0.507225, abs=1e-6)


def test_distance_routes_agree(rng):
    mats = mc.hs_matrices(rng, 500)
    frob = linalg.frobenius_norm(mats - np.eye(4) / 4)
    spectral = mc.distance_from_spectrum(linalg.eigvalsh(mats))
    np.testing.assert_allclose(spectral, frob, atol=1e-10)
    for m, d in zip(mats[:50], frob[:50]):
        assert mc.distance_from_I4(states.from_matrix(m)) == pytest.approx(d, abs=1e-12)


@pytest.mark.parametrize("objective", sorted(mc.OBJECTIVES))
def test_determinism_and_consistency(objective):
    a = mc.estimate_extreme(objective, 25_000, seed=11)
    b = mc.estimate_extreme(objective, 25_000, seed=11)
    assert a == b
    assert a.n_accepted <= a.n_samples == 25_000
    assert mc.objective_value(objective, a.extreme_state_spectrum) == pytest.approx(a.extreme_value, abs=1e-9)
    spec = a.extreme_state_spectrum.as_array()
    if objective == "max-distance-in-acvenn":
        assert entropy_of_spectrum(spec) >= 1 - classes.CLASS_TOL
    elif objective == "min-distance-outside-acvenn":
        assert entropy_of_spectrum(spec) < 1 - classes.CLASS_TOL
    else:
        assert classes.is_abs_separable(a.extreme_state_spectrum)


def test_monotone_in_n():
    values = [mc.estimate_extreme("max-distance-in-acvenn", n, seed=5).extreme_value for n in (500, 10_000, 30_000)]
    assert all(x <= y for x, y in zip(values, values[1:]))
    values = [mc.estimate_extreme("min-distance-outside-acvenn", n, seed=5).extreme_value for n in (500, 10_000, 30_000)]
    assert all(x >= y for x, y in zip(values, values[1:]))


def test_no_members_reports_nan():
    stats = mc.estimate_extreme("max-distance-in-acvenn", 1, seed=5)
    assert stats.n_accepted == 0
    assert np.isnan(stats.extreme_value) and stats.extreme_state_spectrum is None


def test_runs_are_prefixes_of_longer_runs():
    short = mc._block_records("hs", 9, 0, 300, classes.CLASS_TOL)
    long = mc._block_records("hs", 9, 0, 1000, classes.CLASS_TOL)
    np.testing.assert_array_equal(short["spectra"], long["spectra"][:300])


def test_worker_count_does_not_matter():
    one = mc.estimate_extreme("min-entropy-in-as", 30_000, seed=8, workers=1)
    two = mc.estimate_extreme("min-entropy-in-as", 30_000, seed=8, workers=2)
    assert one == two


def test_bad_arguments():
    with pytest.raises(ValueError):
        mc.estimate_extreme("nope", 10)
    with pytest.raises(ValueError):
        mc.estimate_extreme("max-distance-in-acvenn", 0)


def test_stats_json():
    stats = mc.estimate_extreme("max-distance-in-acvenn", 100, seed=1)
    d = stats.to_dict()
    assert d["n_samples"] == 100 and d["seed"] == 1
    assert len(d["extreme_state_spectrum"]) == 4
    assert '"objective": "max-distance-in-acvenn"' in stats.to_json()


def test_csv_dump(tmp_path):
    path = tmp_path / "samples.csv"
    mc.write_sample_csv(str(path), "max-distance-in-acvenn", 250, seed=4, block_size=100)
    rows = list(csv.DictReader(open(path)))
    assert len(rows) == 250
    assert [int(r["index"]) for r in rows] == list(range(250))
    stats = mc.estimate_extreme("max-distance-in-acvenn", 250, seed=4, block_size=100)
    members = [float(r["distance"]) for r in rows if r["is_acvenn"] == "true"]
    assert len(members) == stats.n_accepted
    assert max(members) == pytest.approx(stats.extreme_value, rel=1e-11)
    for r in rows:
        assert (r["is_acvenn"] == "true") == (float(r["S"]) >= 1 - 1e-9)
