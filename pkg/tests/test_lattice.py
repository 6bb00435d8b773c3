import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from metacrystal import band, lattice
from metacrystal.band import DispersionSpec, HoppingSet
from metacrystal.errors import (DegenerateWidth, NoSnapshot, NonHermitianMatrix,
                                RangeExceedsLattice, ZeroState)
from metacrystal.lattice import LatticeState, PotentialProfile

GOLDEN = json.loads((Path(__file__).parent / "golden" / "fig2a_dense.json").read_text())


def defect(N=256, origin=-128):
    return PotentialProfile.site_delta(N, 0, 2.0, origin=origin)


class TestState:
    def test_rejects_odd_or_small(self):
        with pytest.raises(ValueError):
            LatticeState(np.ones(7))
        with pytest.raises(ValueError):
            LatticeState(np.ones(6))

    def test_labels_and_site_lookup(self):
        s = LatticeState(np.arange(8), origin=-4)
        assert list(s.labels) == list(range(-4, 4))
        assert s.site(0) == 4

    def test_amplitudes_are_read_only(self):
        s = LatticeState(np.ones(8))
        with pytest.raises(ValueError):
            s.amplitudes[0] = 2


class TestPacket:
    def test_reference_initial_state(self, ref_packet):
        n = ref_packet.labels
        expected = np.exp(-(n + 20) ** 2 / 16 + 1j * np.pi * n / 2)
        expected /= np.linalg.norm(expected)
        assert np.allclose(ref_packet.amplitudes, expected, atol=1e-15)
        assert ref_packet.norm_sq == pytest.approx(1.0, abs=1e-14)

    def test_symmetric_real_packet(self):
        s = lattice.gaussian_packet(256, 0.0, 16.0, 0.0)
        f = s.amplitudes
        assert np.all(f.real >= 0) and np.all(f.imag == 0) and f.real.max() > 0
        # label 0 sits at index 128; its mirror partner of label n is -n
        assert np.allclose(f[1:], f[1:][::-1])
        assert lattice.center_of_mass(s) == pytest.approx(0.0, abs=1e-12)

    def test_degenerate_width(self):
        with pytest.raises(DegenerateWidth):
            lattice.gaussian_packet(64, 0.0, 0.5, 0.0)

    @settings(max_examples=30, deadline=None)
    @given(st.floats(-40, 40), st.floats(1, 100), st.floats(-np.pi, np.pi))
    def test_always_normalised(self, center, sigma_sq, k0a):
        s = lattice.gaussian_packet(128, center, sigma_sq, k0a)
        assert s.norm_sq == pytest.approx(1.0, abs=1e-14)


class TestPotential:
    def test_site_delta_uses_labels(self):
        p = defect()
        assert p.values[128] == 2.0 and p.values.sum() == 2.0

    def test_disorder_bounds_and_replay(self):
        a = PotentialProfile.uniform_disorder(4096, 0.5, seed=7)
        b = PotentialProfile.uniform_disorder(4096, 0.5, seed=7)
        c = PotentialProfile.uniform_disorder(4096, 0.5, seed=8)
        assert np.all(np.abs(a.values) < 0.5)
        assert a.values.tobytes() == b.values.tobytes()
        assert not np.array_equal(a.values, c.values)
        assert a.descriptor == {"kind": "uniform_disorder", "W": 0.5, "seed": 7}

    def test_gaussian_well(self):
        p = PotentialProfile.gaussian_well(64, 0.2, 3.0, 2.0, origin=-32)
        assert p.values.min() == pytest.approx(-0.2)
        assert np.argmin(p.values) - 32 == 3


class TestHamiltonian:
    def test_nearest_neighbour_ring(self, sinusoidal):
        H = lattice.build_hamiltonian(band.hoppings(sinusoidal, 1), PotentialProfile.none(4), 4)
        expected = -0.5 * np.array([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
        assert np.array_equal(H, expected)

    def test_row_convention(self):
        # (H f)(m) = sum_n J_n f(m + n): H[m, m + n] = J_n
        h = HoppingSet({2: 1j, -2: -1j}, 2)
        H = lattice.build_hamiltonian(h, PotentialProfile.none(8), 8)
        assert H[0, 2] == 1j and H[2, 0] == -1j and H[7, 1] == 1j

    def test_range_exceeds_lattice(self, sawtooth):
        with pytest.raises(RangeExceedsLattice):
            lattice.build_hamiltonian(band.hoppings(sawtooth, 5), PotentialProfile.none(8), 8)

    @pytest.mark.parametrize("kind", ["sawtooth", "sinusoidal"])
    def test_hermitian(self, kind):
        spec = DispersionSpec(kind)
        pot = PotentialProfile.uniform_disorder(64, 0.5, 1)
        for hops in (band.hoppings(spec, 32), band.ring_hoppings(spec, 64)):
            H = lattice.build_hamiltonian(hops, pot, 64)
            assert np.max(np.abs(H - H.conj().T)) <= 1e-13

    @pytest.mark.parametrize("N", [8, 64, 256])
    def test_ring_eigenvalues_match_dft_grid(self, sawtooth, N):
        # oracle: band.evaluate sampled on k_j = 2 pi j / (N a)
        H = lattice.ring_hamiltonian(sawtooth, PotentialProfile.none(N))
        eig = np.sort(np.linalg.eigvalsh(H))
        grid = np.sort(band.evaluate(sawtooth, lattice.wavenumbers(N)))
        assert np.max(np.abs(eig - grid)) <= 1e-10

    def test_truncated_sawtooth_table_misses_the_grid(self, sawtooth):
        # the bare M = N/2 table lacks the aliased tail; folding is what makes it exact
        H = lattice.build_hamiltonian(band.hoppings(sawtooth, 32), PotentialProfile.none(64), 64)
        eig = np.sort(np.linalg.eigvalsh(H))
        grid = np.sort(band.evaluate(sawtooth, lattice.wavenumbers(64)))
        assert np.max(np.abs(eig - grid)) > 1e-3


class TestDense:
    def test_zero_hamiltonian_is_identity(self, ref_packet):
        out = lattice.propagate_dense(ref_packet, np.zeros((256, 256)), 5.0)
        assert np.array_equal(out.amplitudes, ref_packet.amplitudes)
        assert out.t == 5.0

    def test_diagonal_phases(self):
        rng = np.random.default_rng(3)
        U = rng.uniform(-1, 1, 16)
        s = LatticeState(rng.normal(size=16) + 1j * rng.normal(size=16))
        out = lattice.propagate_dense(s, np.diag(U), 2.5)
        assert np.allclose(np.abs(out.amplitudes), np.abs(s.amplitudes), atol=1e-14)
        assert np.allclose(out.amplitudes, s.amplitudes * np.exp(-1j * U * 2.5), atol=1e-13)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianMatrix):
            lattice.propagate_dense(LatticeState(np.ones(8)), np.triu(np.ones((8, 8))), 1.0)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 50))
    def test_unitary_for_random_hermitian(self, seed, duration):
        rng = np.random.default_rng(seed)
        A = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
        s = LatticeState(rng.normal(size=32) + 1j * rng.normal(size=32))
        out = lattice.propagate_dense(s, A + A.conj().T, duration)
        assert out.norm_sq == pytest.approx(s.norm_sq, rel=1e-12)


class TestSplitStep:
    def test_free_sawtooth_matches_dense_oracle(self, sawtooth):
        s = lattice.gaussian_packet(128, -20, 16, np.pi / 2)
        pot = PotentialProfile.none(128)
        traj = lattice.propagate_splitstep(s, sawtooth, pot, 10.0, 0.01, 100)
        ref = lattice.propagate_dense(s, lattice.ring_hamiltonian(sawtooth, pot), 10.0)
        assert np.max(np.abs(traj.final.amplitudes - ref.amplitudes)) <= 1e-10

    def test_strang_second_order(self, sinusoidal):
        s = lattice.gaussian_packet(128, -20, 16, np.pi / 2)
        pot = defect(128, -64)
        ref = lattice.propagate_dense(s, lattice.ring_hamiltonian(sinusoidal, pot), 30.0)
        gaps = [np.max(np.abs(lattice.propagate_splitstep(s, sinusoidal, pot, 30.0, dt, 10**6)
                              .final.amplitudes - ref.amplitudes)) for dt in (0.1, 0.05)]
        assert 3.5 <= gaps[0] / gaps[1] <= 4.5

    def test_sampling_schedule(self, sawtooth, ref_packet):
        traj = lattice.propagate_splitstep(ref_packet, sawtooth, PotentialProfile.none(256),
                                           1.05, 0.01, 10, snapshots=True)
        assert traj.times[0] == 0 and traj.times[-1] == pytest.approx(1.05)
        assert np.all(np.diff(traj.times) > 0)
        assert len(traj.times) == len(traj.norms) == len(traj.centers_of_mass) == len(traj.snapshots)

    def test_norm_drift_over_ten_thousand_steps(self, sinusoidal, ref_packet):
        pot = PotentialProfile.uniform_disorder(256, 0.5, 11)
        traj = lattice.propagate_splitstep(ref_packet, sinusoidal, pot, 100.0, 0.01, 1000)
        assert np.max(np.abs(traj.norms - 1.0)) <= 1e-10

    def test_duration_rounds_to_whole_steps(self, sawtooth, ref_packet):
        traj = lattice.propagate_splitstep(ref_packet, sawtooth, PotentialProfile.none(256),
                                           0.1049, 0.01, 1)
        assert len(traj.times) == 11


class TestObservables:
    def test_center_of_mass_single_site(self):
        f = np.zeros(16)
        f[5 + 8] = 1.0
        assert lattice.center_of_mass(LatticeState(f, origin=-8)) == 5.0

    def test_center_of_mass_zero_state(self):
        with pytest.raises(ZeroState):
            lattice.center_of_mass(LatticeState(np.zeros(8)))

    def test_packet_width_of_ref_packet(self, ref_packet):
        # |f|^2 ~ exp(-2 (n+20)^2 / 16): standard deviation 2
        assert lattice.packet_width(ref_packet) == pytest.approx(2.0, abs=1e-9)

    def test_partition_sums_to_norm(self, ref_packet):
        split = lattice.partition(ref_packet, -20)
        assert split.T + split.R + split.trapped == pytest.approx(ref_packet.norm_sq, abs=1e-12)

    def test_transmitted_packet(self):
        s = lattice.gaussian_packet(256, 40.0, 16.0, 0.0)
        traj = lattice.Trajectory(np.array([0.0]), np.array([1.0]), np.array([40.0]), [s], s)
        split = lattice.transmission_reflection(traj, 0, 0.0)
        assert split.T == pytest.approx(1.0, abs=1e-12) and split.R < 1e-12

    def test_no_hopping_keeps_packet_left(self, ref_packet):
        frozen = DispersionSpec.sinusoidal(J=0.0)
        traj = lattice.propagate_splitstep(ref_packet, frozen, defect(), 60.0, 0.1, 100, snapshots=True)
        split = lattice.transmission_reflection(traj, 0, 60.0)
        assert split.T < 1e-20
        assert split.R == pytest.approx(1.0, abs=1e-12)

    def test_missing_snapshot(self, sawtooth, ref_packet):
        traj = lattice.propagate_splitstep(ref_packet, sawtooth, PotentialProfile.none(256), 1.0, 0.1)
        with pytest.raises(NoSnapshot):
            lattice.transmission_reflection(traj, 0, 1.0)
        traj = lattice.propagate_splitstep(ref_packet, sawtooth, PotentialProfile.none(256), 1.0, 0.1,
                                           snapshots=True)
        with pytest.raises(NoSnapshot):
            lattice.transmission_reflection(traj, 0, 50.0)

    def test_sawtooth_slope_is_j_over_pi(self, sawtooth, ref_packet):
        traj = lattice.propagate_splitstep(ref_packet, sawtooth, PotentialProfile.none(256), 20.0, 0.01)
        assert lattice.com_slope(traj, 0, 20) == pytest.approx(1 / np.pi, rel=1e-8)

    def test_sinusoidal_slope_is_momentum_averaged_velocity(self, sinusoidal, ref_packet):
        # <J sin k> over |f(k)|^2 ~ exp(-8 (k - pi/2)^2) is J exp(-1/32)
        traj = lattice.propagate_splitstep(ref_packet, sinusoidal, PotentialProfile.none(256), 20.0, 0.01)
        assert lattice.com_slope(traj, 0, 20) == pytest.approx(np.exp(-1 / 32), rel=1e-6)


class TestFig2aAgainstGolden:
    """Split-step runs of the defect scenario against the committed dense-oracle values."""

    @pytest.mark.parametrize("kind", ["sawtooth", "sinusoidal"])
    @pytest.mark.parametrize("t", [60.0, 120.0])
    def test_scattering_matches_oracle(self, kind, t, ref_packet):
        traj = lattice.propagate_splitstep(ref_packet, DispersionSpec(kind), defect(), t, 0.01,
                                           int(round(t / 0.01)), snapshots=True)
        split = lattice.transmission_reflection(traj, 0, t)
        gold = GOLDEN["bands"][kind][repr(t)]
        assert split.T == pytest.approx(gold["T"], abs=1e-4)
        assert split.R == pytest.approx(gold["R"], abs=1e-4)

    def test_sawtooth_passes_defect_without_reflection(self):
        late = GOLDEN["bands"]["sawtooth"]["120.0"]
        assert late["T"] >= 0.95 and late["R"] <= 0.02

    def test_sinusoidal_reflects(self):
        # a site defect U0 = 2J on the nearest-neighbour chain at k0a = pi/2
        # reflects 1 - 1/(1 + U0^2) = 0.8 of a plane wave
        assert GOLDEN["bands"]["sinusoidal"]["60.0"]["R"] == pytest.approx(0.8, abs=0.02)


def test_dense_trajectory_matches_splitstep(sinusoidal):
    s = lattice.gaussian_packet(64, -10, 16, np.pi / 2, origin=-32)
    pot = PotentialProfile.uniform_disorder(64, 0.5, 2)
    dense = lattice.dense_trajectory(s, sinusoidal, pot, [0.0, 2.0, 4.0])
    split = lattice.propagate_splitstep(s, sinusoidal, pot, 4.0, 1e-3, 2000)
    assert np.allclose(dense.centers_of_mass, split.centers_of_mass, atol=1e-6)
