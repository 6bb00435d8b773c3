"""Transverse field dynamics in a 4-f self-imaging ring resonator.

Per round trip the field at the image plane is Fourier transformed onto the
grating plane, multiplied by the grating transmission t1, transformed back
and multiplied by the image-plane mask t2.  A plane wave exp(i k x) picks up
the grating transmission evaluated at x = -lambda f k / (2 pi), so the
grating profile plays the role of a band E(k) with period
a = lambda f / A, and the mask plays the role of an on-site potential.

Lengths are in metres; time is counted in round trips.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import band, lattice
from .band import DispersionSpec
from .errors import GratingTooStrong
from .lattice import LatticeState, PotentialProfile, make_rng

_EDGE_RTOL = 1e-9


def metacrystal_period(wavelength, focal, A):
    """Equivalent lattice period lambda * f / A of the emulated crystal."""
    if wavelength <= 0 or focal <= 0 or A <= 0:
        raise ValueError("wavelength, focal length and grating period must be positive")
    return wavelength * focal / A


@dataclass(frozen=True)
class Grating:
    """Phase profile phi1(x) of the Fourier-plane grating, period A.

    ``sinusoidal``: phi1 = -J cos(2 pi x / A).
    ``sawtooth``: phi1 = -2 J x / A on (-A/2, A/2), zero at the jump.
    ``custom``: ``samples`` of phi1 on one period starting at x = 0,
    linearly interpolated.
    """

    kind: str = "sawtooth"
    J: float = 0.5
    samples: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("sinusoidal", "sawtooth", "custom"):
            raise ValueError(f"unknown grating kind {self.kind!r}")
        if self.kind == "custom" and len(self.samples) < 2:
            raise ValueError("custom grating needs at least two samples")
        object.__setattr__(self, "samples", tuple(float(s) for s in self.samples))

    def phase(self, x, A):
        x = np.asarray(x, dtype=float)
        if self.kind == "sinusoidal":
            return -self.J * np.cos(2.0 * np.pi * x / A)
        if self.kind == "sawtooth":
            xf = np.mod(x + A / 2.0, A) - A / 2.0
            edge = np.abs(np.abs(xf) - A / 2.0) <= _EDGE_RTOL * A
            return np.where(edge, 0.0, -2.0 * self.J * xf / A)
        s = np.asarray(self.samples)
        grid = np.arange(s.size) * A / s.size
        return np.interp(np.mod(x, A), grid, s, period=A)

    @property
    def amplitude(self):
        if self.kind == "custom":
            return float(np.max(np.abs(self.samples)))
        return self.J

    def band(self, a):
        """The band E(k) = phi1(-lambda f k / 2 pi) this grating emulates."""
        if self.kind == "custom":
            raise ValueError("custom gratings have no closed-form band")
        return DispersionSpec(self.kind, self.J, a)


@dataclass(frozen=True)
class Mask:
    """Phase profile phi2(x) of the image-plane mask (the emulated potential).

    ``gaussian_well``: -U0 exp(-(x - d)^2 / s^2).
    ``piecewise_disorder``: one uniform draw in (-half_width, half_width)
    per cell of width ``cell`` centred on x = n * cell.
    """

    kind: str = "none"
    U0: float = 0.0
    d: float = 0.0
    s: float = 1.0
    half_width: float = 0.0
    cell: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("none", "gaussian_well", "piecewise_disorder"):
            raise ValueError(f"unknown mask kind {self.kind!r}")

    def phase(self, x, a):
        x = np.asarray(x, dtype=float)
        if self.kind == "none":
            return np.zeros_like(x)
        if self.kind == "gaussian_well":
            return -self.U0 * np.exp(-((x - self.d) / self.s) ** 2)
        cell = a if self.cell is None else self.cell
        idx = np.floor(x / cell + 0.5).astype(np.int64)
        lo = idx.min()
        draws = make_rng(self.seed).uniform(-self.half_width, self.half_width,
                                            idx.max() - lo + 1)
        return draws[idx - lo]

    def with_seed(self, seed):
        return replace(self, seed=int(seed))


@dataclass(frozen=True)
class CavityConfig:
    """Resonator, grating, mask and transverse grid.

    The window spans ``window_periods`` metacrystal periods with ``n_x``
    samples.
    """

    wavelength: float = 633e-9
    focal: float = 0.02
    A: float = 30e-6
    T: float = 0.02
    grating: Grating = field(default_factory=Grating)
    mask: Mask = field(default_factory=Mask)
    n_x: int = 8192
    window_periods: int = 64
    exact_phase: bool = True

    def __post_init__(self):
        metacrystal_period(self.wavelength, self.focal, self.A)
        if not 0 <= self.T < 1:
            raise ValueError("coupler transmittance T must lie in [0, 1)")
        if self.n_x < 1024 or self.n_x & (self.n_x - 1):
            raise ValueError("n_x must be a power of two >= 1024")
        if self.window_periods < 16:
            raise ValueError("window must span at least 16 metacrystal periods")

    @property
    def a(self):
        return metacrystal_period(self.wavelength, self.focal, self.A)

    @property
    def L(self):
        return self.window_periods * self.a

    @property
    def dx(self):
        return self.L / self.n_x

    @property
    def x(self):
        return -self.L / 2.0 + self.dx * np.arange(self.n_x)

    @property
    def k(self):
        return 2.0 * np.pi * np.fft.fftfreq(self.n_x, self.dx)

    def kinetic_phase(self):
        """phi1 at the grating-plane coordinate of each DFT wavenumber."""
        return self.grating.phase(-self.wavelength * self.focal * self.k / (2.0 * np.pi), self.A)

    def potential(self):
        return self.mask.phase(self.x, self.a)

    def transmissions(self):
        phi1, phi2 = self.kinetic_phase(), self.potential()
        if self.exact_phase:
            return np.exp(-1j * phi1), np.exp(-1j * phi2)
        return 1.0 - 1j * phi1, 1.0 - 1j * phi2


@dataclass(frozen=True)
class InjectionSpec:
    """Pulsed tilted Gaussian E_m(x) = F(m) G(x).

    G(x) = amplitude * exp(-x^2 / w^2 + i k0a x / a) and
    F(m) = exp(-(m - t0)^2 / tau^2).
    """

    w: float = 800e-6
    k0a: float = 0.5 * np.pi
    t0: float = 20.0
    tau: float = 10.0
    amplitude: float = 1.0

    def __post_init__(self):
        if self.w <= 0 or self.tau <= 0:
            raise ValueError("w and tau must be positive")

    def profile(self, x, a):
        return self.amplitude * np.exp(-(x / self.w) ** 2 + 1j * self.k0a * x / a)

    def envelope(self, m):
        return float(np.exp(-((m - self.t0) / self.tau) ** 2))


@dataclass(frozen=True)
class CavityField:
    samples: np.ndarray
    m: int
    dx: float

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @classmethod
    def zeros(cls, cfg: CavityConfig):
        return cls(np.zeros(cfg.n_x, dtype=complex), 0, cfg.dx)

    @property
    def power(self):
        return intracavity_power(self)


def intracavity_power(fld: CavityField) -> float:
    return float(np.sum(np.abs(fld.samples) ** 2) * fld.dx)


class _Stepper:
    """Round-trip map with the transmissions computed once."""

    def __init__(self, cfg: CavityConfig, inj: InjectionSpec | None = None):
        self.cfg = cfg
        self.t1, self.t2 = cfg.transmissions()
        self.inj = inj
        self.G = inj.profile(cfg.x, cfg.a) if inj is not None else None
        self.sqrt_T = np.sqrt(cfg.T)

    def free(self, psi):
        return self.t2 * np.fft.ifft(self.t1 * np.fft.fft(psi))

    def driven(self, psi, m):
        out = self.free(psi) - 0.5 * self.cfg.T * psi
        if self.inj is not None:
            out = out + self.sqrt_T * self.inj.envelope(m) * self.G
        return out


def round_trip(fld: CavityField, cfg: CavityConfig) -> CavityField:
    """One pass of the lossless, undriven map psi -> t2 * t1(grating) * psi."""
    return CavityField(_Stepper(cfg).free(fld.samples), fld.m + 1, fld.dx)


def driven_round_trip(fld: CavityField, cfg: CavityConfig, inj: InjectionSpec) -> CavityField:
    """One pass including output-coupler loss T/2 and injection sqrt(T) E_m."""
    return CavityField(_Stepper(cfg, inj).driven(fld.samples, fld.m), fld.m + 1, fld.dx)


@dataclass
class CavityRun:
    """Per-trip power and centroid, plus optional intensity snapshots.

    Entry ``i`` describes the field after round trip ``trips[i]``.
    """

    trips: np.ndarray
    powers: np.ndarray
    centroids: np.ndarray
    snapshots: list | None
    final: CavityField
    a: float

    @property
    def normalized_power(self):
        peak = self.powers.max()
        return self.powers / peak if peak > 0 else self.powers


def centroid(fld: CavityField, x):
    p = np.abs(fld.samples) ** 2
    total = p.sum()
    return float(np.dot(x, p) / total) if total > 0 else float("nan")


def run_cavity(cfg: CavityConfig, inj: InjectionSpec | None, n_trips,
               initial: CavityField | None = None, sample_every=1, snapshots=False) -> CavityRun:
    """Iterate the driven map (or the free map when ``inj`` is None and T = 0)."""
    step = _Stepper(cfg, inj)
    x = cfg.x
    fld = initial if initial is not None else CavityField.zeros(cfg)
    psi, m0 = np.array(fld.samples), fld.m
    trips, powers, cents, snaps = [], [], [], []
    for i in range(1, n_trips + 1):
        psi = step.driven(psi, m0 + i - 1)
        if i % sample_every == 0 or i == n_trips:
            cur = CavityField(psi, m0 + i, cfg.dx)
            trips.append(cur.m)
            powers.append(cur.power)
            cents.append(centroid(cur, x))
            if snapshots:
                snaps.append(cur)
    final = CavityField(psi, m0 + n_trips, cfg.dx)
    return CavityRun(np.array(trips), np.array(powers), np.array(cents),
                     snaps if snapshots else None, final, cfg.a)


def backward_fraction(fld: CavityField, cfg: CavityConfig) -> float:
    """Fraction of the field's power carried by components with dE/dk < 0.

    The emulated band is E(k) = phi1(-lambda f k / 2 pi); its slope is
    estimated by a centred difference of the grating profile.
    """
    spectrum = np.abs(np.fft.fft(fld.samples)) ** 2
    h = 1e-6 * np.pi / cfg.a
    scale = -cfg.wavelength * cfg.focal / (2.0 * np.pi)
    slope = (cfg.grating.phase(scale * (cfg.k + h), cfg.A)
             - cfg.grating.phase(scale * (cfg.k - h), cfg.A)) / (2.0 * h)
    total = spectrum.sum()
    return float(spectrum[slope < 0].sum() / total) if total > 0 else 0.0


@dataclass(frozen=True)
class Correspondence:
    max_error: float
    overlap: float


def correspondence_check(cfg: CavityConfig, spec: DispersionSpec,
                         pot: PotentialProfile | None = None, n_trips=100,
                         initial: InjectionSpec | None = None,
                         max_amplitude=0.1) -> Correspondence:
    """Compare the exact-phase cavity map with lattice dynamics.

    The cavity field is sampled at x = n a and compared with the dense
    lattice evolution of the same samples for time ``n_trips`` under band
    ``spec`` and potential ``pot`` (by default the mask sampled at the
    sites).  Both profiles are normalised before comparison.  The initial
    field defaults to a tilted Gaussian two periods wide.
    """
    if cfg.grating.amplitude > max_amplitude:
        raise GratingTooStrong(
            f"grating amplitude {cfg.grating.amplitude} exceeds {max_amplitude}")
    cfg = replace(cfg, exact_phase=True, T=0.0)
    a = cfg.a
    per_site = cfg.n_x // cfg.window_periods
    if per_site * cfg.window_periods != cfg.n_x:
        raise ValueError("n_x must be a multiple of window_periods to sample at x = n a")
    n_sites = cfg.window_periods
    origin = -(n_sites // 2)
    site_idx = per_site * np.arange(n_sites)  # x = -L/2 + j dx lands on n = origin + j / per_site

    inj = initial if initial is not None else InjectionSpec(w=2.0 * a, k0a=0.5 * np.pi)
    psi0 = CavityField(inj.profile(cfg.x, a), 0, cfg.dx)
    cav = run_cavity(cfg, None, n_trips, initial=psi0, sample_every=n_trips).final
    cav_sites = cav.samples[site_idx]

    if pot is None:
        pot = PotentialProfile(cfg.potential()[site_idx], {"kind": "sampled_mask"})
    f0 = LatticeState(psi0.samples[site_idx], 0.0, origin)
    lat = lattice.propagate_dense(f0, lattice.ring_hamiltonian(spec, pot), float(n_trips))

    u = cav_sites / np.linalg.norm(cav_sites)
    v = lat.amplitudes / np.linalg.norm(lat.amplitudes)
    return Correspondence(float(np.max(np.abs(u - v))), float(abs(np.vdot(v, u))))


def lattice_band(cfg: CavityConfig) -> DispersionSpec:
    """Band emulated by the configured grating, with a = lambda f / A."""
    return cfg.grating.band(cfg.a)


__all__ = [
    "metacrystal_period", "Grating", "Mask", "CavityConfig", "InjectionSpec", "CavityField",
    "intracavity_power", "round_trip", "driven_round_trip", "run_cavity", "CavityRun",
    "centroid", "backward_fraction", "correspondence_check", "Correspondence", "lattice_band",
]
