"""Single-band dispersion curves and their long-range hopping tables.

A band is described by its energy curve E(k), periodic in the Bloch
wavenumber k with period 2*pi/a.  Its Fourier coefficients are the hopping
amplitudes J_n between sites n periods apart:

    E(k) = sum_n J_n exp(i n a k)

Two closed forms are built in: the ordinary nearest-neighbour band
E = -J cos(ka) and the sawtooth band E = J a k / pi, whose hoppings are
purely imaginary and decay as 1/n.  Arbitrary bands are given by a finite
coefficient list.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import NonHermitian, NonHermitianCustom

KINDS = ("sinusoidal", "sawtooth", "custom")

# relative tolerance for recognising the folded zone edge k = -pi/a
_EDGE_RTOL = 1e-9
IMAG_TOL = 1e-9
HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class DispersionSpec:
    """Band curve E(k) with half-bandwidth ``J`` and lattice period ``a``.

    For ``kind="custom"`` the band is the finite Fourier sum over
    ``coefficients``, a sequence of ``(n, J_n)`` pairs.  ``J`` is then only
    informational.
    """

    kind: str
    J: float = 1.0
    a: float = 1.0
    coefficients: tuple[tuple[int, complex], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown dispersion kind {self.kind!r}")
        if not self.a > 0:
            raise ValueError("lattice period a must be positive")
        if not self.J >= 0:
            raise ValueError("amplitude J must be non-negative")
        coeffs = tuple((int(n), complex(c)) for n, c in self.coefficients)
        if self.kind == "custom":
            if not coeffs:
                raise ValueError("custom dispersion needs at least one coefficient")
            offsets = [n for n, _ in coeffs]
            if len(set(offsets)) != len(offsets):
                raise ValueError("duplicate hopping offset in custom coefficients")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def sinusoidal(cls, J=1.0, a=1.0):
        return cls("sinusoidal", J, a)

    @classmethod
    def sawtooth(cls, J=1.0, a=1.0):
        return cls("sawtooth", J, a)

    @classmethod
    def custom(cls, coefficients: Mapping[int, complex] | Sequence[tuple[int, complex]],
               a=1.0, J=0.0):
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        return cls("custom", J, a, tuple(sorted(items)))

    @property
    def bandwidth(self):
        return 2.0 * self.J


@dataclass(frozen=True)
class HoppingSet:
    """Hopping amplitudes J_n for offsets ``-M..M`` on a lattice of period ``a``."""

    entries: Mapping[int, complex]
    M: int
    a: float = 1.0
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        full = {n: 0j for n in range(-self.M, self.M + 1)}
        for n, value in self.entries.items():
            if abs(n) > self.M:
                raise ValueError(f"offset {n} outside range M={self.M}")
            full[int(n)] = complex(value)
        object.__setattr__(self, "entries", full)

    def __getitem__(self, n):
        return self.entries.get(n, 0j)

    @property
    def offsets(self):
        return np.arange(-self.M, self.M + 1)

    @property
    def values(self):
        return np.array([self.entries[n] for n in range(-self.M, self.M + 1)])

    @property
    def is_hermitian(self):
        if "hermitian" not in self._cache:
            self._cache["hermitian"] = all(
                abs(self.entries[-n] - self.entries[n].conjugate()) <= HERMITIAN_TOL
                for n in range(0, self.M + 1)
            )
        return self._cache["hermitian"]

    @property
    def is_real(self):
        return all(abs(v.imag) <= HERMITIAN_TOL for v in self.entries.values())


def fold(spec: DispersionSpec, k):
    """Fold wavenumbers into the Brillouin zone [-pi/a, pi/a)."""
    period = 2.0 * np.pi / spec.a
    return np.mod(np.asarray(k, dtype=float) + np.pi / spec.a, period) - np.pi / spec.a


def _at_edge(spec, kf):
    # mod may round to either end of the zone
    return np.abs(np.abs(kf * spec.a) - np.pi) <= _EDGE_RTOL * np.pi


def _custom_sum(spec, k):
    k = np.asarray(k, dtype=float)
    total = np.zeros(k.shape, dtype=complex)
    for n, c in spec.coefficients:
        total += c * np.exp(1j * n * spec.a * k)
    return total


def evaluate(spec: DispersionSpec, k):
    """Band energy E(k); accepts scalars or arrays.

    The sawtooth takes its Fourier-series midpoint value 0 at the zone edge.
    """
    scalar = np.ndim(k) == 0
    kf = fold(spec, k)
    if spec.kind == "sinusoidal":
        energy = -spec.J * np.cos(kf * spec.a)
    elif spec.kind == "sawtooth":
        energy = np.where(_at_edge(spec, kf), 0.0, spec.J * spec.a * kf / np.pi)
    else:
        total = _custom_sum(spec, kf)
        worst = np.max(np.abs(total.imag)) if total.size else 0.0
        if worst >= IMAG_TOL:
            raise NonHermitianCustom(
                f"custom band has imaginary part {worst:.3g} (coefficients not Hermitian)")
        energy = total.real
    return float(energy) if scalar else np.asarray(energy, dtype=float)


def hoppings(spec: DispersionSpec, M: int) -> HoppingSet:
    """Hopping table J_n, |n| <= M, from the Fourier series of the band."""
    if M < 1:
        raise ValueError("M must be >= 1")
    entries = {n: 0j for n in range(-M, M + 1)}
    if spec.kind == "sinusoidal":
        entries[1] = entries[-1] = complex(-spec.J / 2.0)
    elif spec.kind == "sawtooth":
        for n in range(1, M + 1):
            # J_n = (-1)^(n+1) J / (pi i n); J_-n is its conjugate
            value = complex(0.0, -((-1) ** (n + 1)) * spec.J / (np.pi * n))
            entries[n] = value
            entries[-n] = value.conjugate()
    else:
        for n, c in spec.coefficients:
            if abs(n) <= M:
                entries[n] = c
    return HoppingSet(entries, M, spec.a)


def ring_hoppings(spec: DispersionSpec, N: int) -> HoppingSet:
    """Hoppings of the band folded onto a periodic ring of ``N`` sites.

    Every infinite-range amplitude J_m is added to offset m mod N, so the
    ring Hamiltonian has exactly E(2*pi*j/(N a)) as eigenvalues.  For the
    sawtooth the folded sum is closed form,
    c_n = (-1)^(n+1) J cot(pi n / N) / (i N).  Offsets +-N/2 share the
    folded value equally.
    """
    if N < 2 or N % 2:
        raise ValueError("ring size N must be even")
    half = N // 2
    folded = np.zeros(N, dtype=complex)
    if spec.kind == "sinusoidal":
        folded[1 % N] += -spec.J / 2.0
        folded[-1 % N] += -spec.J / 2.0
    elif spec.kind == "sawtooth":
        for n in range(1, N):
            o = n if n <= half else n - N
            folded[n] = -1j * (-1) ** (o + 1) * spec.J / (N * np.tan(np.pi * o / N))
        folded[half] = 0.0
    else:
        for n, c in spec.coefficients:
            folded[n % N] += c
    entries = {}
    for n in range(-half + 1, half):
        entries[n] = folded[n % N]
    entries[half] = entries[-half] = folded[half] / 2.0
    return HoppingSet(entries, half, spec.a)


def reconstruct(hops: HoppingSet, k):
    """Partial Fourier sum of the hopping table at wavenumber(s) ``k``."""
    if not hops.is_hermitian:
        raise NonHermitian("hopping table is not Hermitian")
    scalar = np.ndim(k) == 0
    k = np.atleast_1d(np.asarray(k, dtype=float))
    phases = np.exp(1j * hops.a * np.outer(k, hops.offsets))
    energy = (phases @ hops.values).real
    return float(energy[0]) if scalar else energy


def interior_samples(spec: DispersionSpec, n_samples: int):
    """``n_samples - 1`` uniformly spaced wavenumbers, zone edge excluded.

    The set is symmetric under k -> -k and contains k = 0.
    """
    i = np.arange(1, n_samples)
    return (-np.pi + 2.0 * np.pi * i / n_samples) / spec.a


def group_velocity(spec: DispersionSpec, k):
    """dE/dk, analytic for closed forms and a centred difference otherwise."""
    kf = fold(spec, k)
    if spec.kind == "sinusoidal":
        return spec.J * spec.a * np.sin(kf * spec.a)
    if spec.kind == "sawtooth":
        return np.full(np.shape(kf), spec.J * spec.a / np.pi)[()]
    h = 1e-6 * np.pi / spec.a
    return (evaluate(spec, kf + h) - evaluate(spec, kf - h)) / (2.0 * h)


def time_reversal_symmetric(spec: DispersionSpec, n_samples: int = 256, tol: float = 1e-9) -> bool:
    """True when E(k) == E(-k) at interior sample points."""
    if n_samples < 8:
        raise ValueError("n_samples must be >= 8")
    k = interior_samples(spec, n_samples)
    return bool(np.all(np.abs(evaluate(spec, k) - evaluate(spec, -k)) <= tol))


@dataclass(frozen=True)
class OneWayCertificate:
    one_way: bool
    v_min: float
    v_max: float


def one_way_certificate(spec: DispersionSpec, n_samples: int = 256) -> OneWayCertificate:
    """Check whether the group velocity keeps one strict sign across the zone."""
    if n_samples < 16:
        raise ValueError("n_samples must be >= 16")
    v = np.asarray(group_velocity(spec, interior_samples(spec, n_samples)))
    one_way = bool(np.all(v > 0) or np.all(v < 0))
    return OneWayCertificate(one_way, float(v.min()), float(v.max()))
