"""Wave-packet dynamics on a periodic 1D lattice with long-range hopping.

The amplitudes f(n, t) obey

    i df(n)/dt = sum_m J_m f(n + m) + U(n) f(n)

on a ring of N sites.  Two propagators are provided: a Strang split-step
scheme that applies the band E(k) exactly on the DFT grid, and a dense
eigendecomposition of the ring Hamiltonian used as an oracle.  Units:
hbar = 1, times in 1/J.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import band
from .band import DispersionSpec, HoppingSet
from .errors import (DegenerateWidth, NoSnapshot, NonHermitian, NonHermitianMatrix,
                     RangeExceedsLattice, ZeroState)


def make_rng(seed):
    """Counter-based generator used for every random draw in the package."""
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class LatticeState:
    """Amplitudes on sites labelled ``origin .. origin + N - 1`` at time ``t``."""

    amplitudes: np.ndarray
    t: float = 0.0
    origin: int = 0

    def __post_init__(self):
        f = np.array(self.amplitudes, dtype=complex)
        if f.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        if f.size < 8 or f.size % 2:
            raise ValueError(f"lattice size must be even and >= 8, got {f.size}")
        f.setflags(write=False)
        object.__setattr__(self, "amplitudes", f)

    @property
    def N(self):
        return self.amplitudes.size

    @property
    def labels(self):
        return np.arange(self.N) + self.origin

    @property
    def intensity(self):
        return np.abs(self.amplitudes) ** 2

    @property
    def norm_sq(self):
        return float(np.sum(self.intensity))

    def site(self, label):
        return self.amplitudes[label - self.origin]


@dataclass(frozen=True)
class PotentialProfile:
    """On-site energies U(n) plus the descriptor that generated them."""

    values: np.ndarray
    descriptor: dict = field(default_factory=lambda: {"kind": "none"})

    def __post_init__(self):
        u = np.array(self.values, dtype=float)
        u.setflags(write=False)
        object.__setattr__(self, "values", u)

    @property
    def N(self):
        return self.values.size

    @classmethod
    def none(cls, N):
        return cls(np.zeros(N), {"kind": "none"})

    @classmethod
    def site_delta(cls, N, site, U0, origin=0):
        u = np.zeros(N)
        u[site - origin] = U0
        return cls(u, {"kind": "site_delta", "site": site, "U0": U0})

    @classmethod
    def gaussian_well(cls, N, U0, d, s, origin=0):
        """U(n) = -U0 exp(-(n - d)^2 / s^2)."""
        n = np.arange(N) + origin
        return cls(-U0 * np.exp(-((n - d) / s) ** 2),
                   {"kind": "gaussian_well", "U0": U0, "d": d, "s": s})

    @classmethod
    def uniform_disorder(cls, N, W, seed):
        """Independent uniform site energies in (-W, W)."""
        u = make_rng(seed).uniform(-W, W, N)
        return cls(u, {"kind": "uniform_disorder", "W": W, "seed": int(seed)})

    @classmethod
    def from_descriptor(cls, N, descriptor, origin=0, seed=None):
        kind = descriptor.get("kind", "none")
        if kind == "none":
            return cls.none(N)
        if kind == "site_delta":
            return cls.site_delta(N, descriptor["site"], descriptor["U0"], origin)
        if kind == "gaussian_well":
            return cls.gaussian_well(N, descriptor["U0"], descriptor["d"], descriptor["s"], origin)
        if kind == "uniform_disorder":
            s = descriptor.get("seed") if seed is None else seed
            return cls.uniform_disorder(N, descriptor["W"], 0 if s is None else s)
        raise ValueError(f"unknown potential kind {kind!r}")


@dataclass
class Trajectory:
    times: np.ndarray
    norms: np.ndarray
    centers_of_mass: np.ndarray
    snapshots: list | None = None
    final: LatticeState | None = None

    def snapshot_near(self, t):
        if not self.snapshots:
            raise NoSnapshot("trajectory was recorded without snapshots")
        i = int(np.argmin(np.abs(self.times - t)))
        spacing = np.max(np.diff(self.times)) if len(self.times) > 1 else 0.0
        if abs(self.times[i] - t) > spacing / 2 + 1e-9:
            raise NoSnapshot(f"no snapshot near t={t} (sampled up to t={self.times[-1]})")
        return self.snapshots[i]

    def intensity_grid(self):
        """Rows of |f(n)|^2, one per snapshot."""
        if not self.snapshots:
            raise NoSnapshot("trajectory was recorded without snapshots")
        return np.array([s.intensity for s in self.snapshots])


def gaussian_packet(N, center, sigma_sq, k0a, origin=None) -> LatticeState:
    """Normalised packet f(n) ~ exp(-(n - center)^2 / sigma_sq + i k0a n).

    ``origin`` defaults to ``-N // 2`` so that labels straddle zero.
    """
    if sigma_sq < 1:
        raise DegenerateWidth(f"sigma_sq={sigma_sq} is narrower than a site")
    if abs(k0a) > np.pi:
        raise ValueError("|k0a| must not exceed pi")
    origin = -(N // 2) if origin is None else origin
    n = np.arange(N) + origin
    f = np.exp(-(n - center) ** 2 / sigma_sq + 1j * k0a * n)
    return LatticeState(f / np.linalg.norm(f), 0.0, origin)


def wavenumbers(N, a=1.0):
    """DFT wavenumbers 2*pi*j/(N a) in numpy's FFT ordering."""
    return 2.0 * np.pi * np.fft.fftfreq(N) / a


def build_hamiltonian(hops: HoppingSet, pot: PotentialProfile, N) -> np.ndarray:
    """Dense ring Hamiltonian, H[m, m + n mod N] += J_n, plus diag(U).

    Offsets that coincide on the ring (n = +-N/2) are summed, which keeps H
    Hermitian whenever the table is.
    """
    if not hops.is_hermitian:
        raise NonHermitian("hopping table is not Hermitian")
    if hops.M > N // 2:
        raise RangeExceedsLattice(f"M={hops.M} exceeds N/2={N // 2}")
    if pot.N != N:
        raise ValueError(f"potential has {pot.N} sites, lattice has {N}")
    row = np.zeros(N, dtype=complex)
    for n, value in hops.entries.items():
        row[n % N] += value
    # circulant: H[m, j] = row[(j - m) mod N]
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    H = row[idx]
    H[np.diag_indices(N)] += pot.values
    return H


def ring_hamiltonian(spec: DispersionSpec, pot: PotentialProfile) -> np.ndarray:
    """Dense Hamiltonian of the full-range band folded onto the ring."""
    return build_hamiltonian(band.ring_hoppings(spec, pot.N), pot, pot.N)


def propagate_dense(state: LatticeState, H, duration) -> LatticeState:
    """exp(-i H duration) f by eigendecomposition."""
    if duration < 0:
        raise ValueError("duration must be non-negative")
    H = np.asarray(H)
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if np.max(np.abs(H - H.conj().T)) > 1e-12 * scale:
        raise NonHermitianMatrix("Hamiltonian is not Hermitian")
    w, V = np.linalg.eigh(H)
    f = V @ (np.exp(-1j * w * duration) * (V.conj().T @ state.amplitudes))
    return replace(state, amplitudes=f, t=state.t + duration)


def center_of_mass(state: LatticeState) -> float:
    p = state.intensity
    total = p.sum()
    if total == 0:
        raise ZeroState("center of mass of the zero state")
    return float(np.dot(state.labels, p) / total)


def packet_width(state: LatticeState) -> float:
    """Standard deviation of the site label under |f|^2."""
    p = state.intensity
    total = p.sum()
    if total == 0:
        raise ZeroState("width of the zero state")
    c = np.dot(state.labels, p) / total
    return float(np.sqrt(np.dot((state.labels - c) ** 2, p) / total))


def propagate_splitstep(state: LatticeState, spec: DispersionSpec, pot: PotentialProfile,
                        duration, dt=0.01, sample_every=10, snapshots=False) -> Trajectory:
    """Strang split-step evolution: half potential, full band step, half potential.

    The band step multiplies DFT coefficients by exp(-i E(k_j) dt) with E
    taken from :func:`band.evaluate`, i.e. without truncating the hoppings.
    Observables are recorded at t0, every ``sample_every`` steps and at the
    final step.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if duration < 0:
        raise ValueError("duration must be non-negative")
    if sample_every < 1:
        raise ValueError("sample_every must be >= 1")
    if pot.N != state.N:
        raise ValueError(f"potential has {pot.N} sites, state has {state.N}")
    steps = int(round(duration / dt))
    kinetic = np.exp(-1j * band.evaluate(spec, wavenumbers(state.N, spec.a)) * dt)
    half_pot = np.exp(-0.5j * pot.values * dt)

    f = np.array(state.amplitudes)
    times, norms, coms, snaps = [], [], [], []

    def record(step, f):
        s = LatticeState(f, state.t + step * dt, state.origin)
        times.append(s.t)
        norms.append(s.norm_sq)
        coms.append(center_of_mass(s))
        if snapshots:
            snaps.append(s)
        return s

    last = record(0, f)
    for step in range(1, steps + 1):
        f = half_pot * np.fft.ifft(kinetic * np.fft.fft(half_pot * f))
        if step % sample_every == 0 or step == steps:
            last = record(step, f)
    return Trajectory(np.array(times), np.array(norms), np.array(coms),
                      snaps if snapshots else None, last)


def dense_trajectory(state: LatticeState, spec: DispersionSpec, pot: PotentialProfile,
                     times, snapshots=False) -> Trajectory:
    """Oracle trajectory sampled at the given times using one diagonalisation."""
    H = ring_hamiltonian(spec, pot)
    w, V = np.linalg.eigh(H)
    c0 = V.conj().T @ state.amplitudes
    out = [LatticeState(V @ (np.exp(-1j * w * (t - state.t)) * c0), t, state.origin)
           for t in times]
    return Trajectory(np.asarray(times, dtype=float),
                      np.array([s.norm_sq for s in out]),
                      np.array([center_of_mass(s) for s in out]),
                      out if snapshots else None, out[-1])


@dataclass(frozen=True)
class Scattering:
    T: float
    R: float
    trapped: float


def partition(state: LatticeState, barrier_site, margin=3) -> Scattering:
    """Intensity beyond, before and within ``margin`` sites of the barrier."""
    p, n = state.intensity, state.labels
    T = float(p[n > barrier_site + margin].sum())
    R = float(p[n < barrier_site - margin].sum())
    return Scattering(T, R, float(p.sum()) - T - R)


def transmission_reflection(traj: Trajectory, barrier_site, t_eval, margin=3) -> Scattering:
    return partition(traj.snapshot_near(t_eval), barrier_site, margin)


def com_slope(traj: Trajectory, t_start, t_end) -> float:
    """Least-squares slope of the center of mass over ``[t_start, t_end]``."""
    eps = 1e-9 * max(1.0, abs(t_end))
    mask = (traj.times >= t_start - eps) & (traj.times <= t_end + eps)
    if mask.sum() < 2:
        raise ValueError(f"fewer than two samples in [{t_start}, {t_end}]")
    return float(np.polyfit(traj.times[mask], traj.centers_of_mass[mask], 1)[0])
