"""
Spectral Dirichlet-to-Neumann maps for concentric two-phase conductivities
==========================================================================

On the unit disk, a radial conductivity equal to ``c`` on ``B_r(0)`` and to 1
elsewhere acts diagonally on Fourier modes of the boundary data::

    Lambda phi = sum_n lambda_n phi_n e^{i n theta}
    lambda_n   = |n| (1 + mu r^{2|n|}) / (1 - mu r^{2|n|}),   mu = (c-1)/(c+1)

Boundary data live in the trace space modulo constants, so the zero mode is
ignored everywhere.  Norms use the physical normalization

    ||phi||^2 = 2 pi sum_n |n| |phi_n|^2,    Q(phi) = 2 pi sum_n lambda_n |phi_n|^2

which makes ``Q`` equal to the Dirichlet energy of the true solution.

Multipliers are stored as ``base * |n| + excess`` so that differences of
nearby maps (e.g. the two extreme conductivities for K close to 1) keep full
relative precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_TRUNCATION = 256


@dataclass(frozen=True)
class Contrast:
    """Ellipticity bound ``K >= 1`` and the derived ``k = (K-1)/(K+1)``."""

    K: float

    def __post_init__(self):
        if not np.isfinite(self.K) or self.K < 1.0:
            raise ValueError(f"ellipticity bound K must be >= 1, got {self.K!r}")

    @property
    def k(self) -> float:
        return ellipticity_k(self.K)


@dataclass(frozen=True)
class ConcentricProfile:
    """Conductivity ``c`` on ``B_r(0)`` and 1 on the rest of the unit disk."""

    c: float
    r: float

    def __post_init__(self):
        if not (0.0 < self.r < 1.0):
            raise ValueError(f"inclusion radius must lie in (0, 1), got {self.r!r}")
        if not (self.c > 0.0 and np.isfinite(self.c)):
            raise ValueError(f"conductivity must be positive, got {self.c!r}")

    @property
    def mu(self) -> float:
        return (self.c - 1.0) / (self.c + 1.0)

    def in_class(self, contrast: Contrast) -> bool:
        """Whether the inclusion value respects ``K^-1 <= c <= K``."""
        return 1.0 / contrast.K <= self.c <= contrast.K


@dataclass(frozen=True)
class FourierBoundaryData:
    """Truncated Fourier series of a boundary function on the unit circle.

    ``coeffs[n + N]`` holds the amplitude of ``e^{i n theta}``.
    """

    N: int
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.N < 0 or coeffs.shape != (2 * self.N + 1,):
            raise ValueError(
                f"expected {2 * self.N + 1} coefficients for N={self.N}, got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_modes(cls, modes: dict[int, complex], N: int | None = None) -> "FourierBoundaryData":
        top = max((abs(n) for n in modes), default=0)
        N = top if N is None else N
        if top > N:
            raise ValueError(f"mode {top} exceeds truncation N={N}")
        coeffs = np.zeros(2 * N + 1, dtype=complex)
        for n, value in modes.items():
            coeffs[n + N] += value
        return cls(N, coeffs)

    @classmethod
    def cos(cls, m: int) -> "FourierBoundaryData":
        """``cos(m theta)``."""
        if m == 0:
            return cls.from_modes({0: 1.0})
        return cls.from_modes({m: 0.5, -m: 0.5})

    @classmethod
    def exp(cls, m: int) -> "FourierBoundaryData":
        """``e^{i m theta}``."""
        return cls.from_modes({m: 1.0})

    @classmethod
    def from_samples(cls, samples: np.ndarray, N: int) -> "FourierBoundaryData":
        """Coefficients from ``M`` equispaced samples by the trapezoidal rule.

        ``samples[j]`` is the value at ``theta_j = 2 pi j / M``.  The rule is
        exact for trigonometric polynomials of degree below ``M/2`` and
        spectrally accurate for smooth periodic data; ``M >= 4N`` is required.
        """
        samples = np.asarray(samples, dtype=complex)
        M = samples.shape[0]
        if M < 4 * N:
            raise ValueError(f"aliasing: {M} samples cannot resolve N={N} modes (need >= {4 * N})")
        spectrum = np.fft.fft(samples) / M
        modes = np.arange(-N, N + 1)
        return cls(N, spectrum[modes % M])

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def coefficient(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])

    def is_real(self, atol: float = 1e-14) -> bool:
        return bool(np.allclose(self.coeffs, np.conj(self.coeffs[::-1]), rtol=0.0, atol=atol))

    def evaluate(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        values = np.exp(1j * np.multiply.outer(theta, self.modes)) @ self.coeffs
        return values.real if self.is_real() else values

    def __add__(self, other: "FourierBoundaryData") -> "FourierBoundaryData":
        N = max(self.N, other.N)
        return FourierBoundaryData(N, _pad(self.coeffs, self.N, N) + _pad(other.coeffs, other.N, N))

    def __mul__(self, scalar: complex) -> "FourierBoundaryData":
        return FourierBoundaryData(self.N, self.coeffs * scalar)

    __rmul__ = __mul__


def _pad(coeffs: np.ndarray, N: int, target: int) -> np.ndarray:
    extra = target - N
    return np.pad(coeffs, (extra, extra)) if extra else coeffs


@dataclass(frozen=True)
class SpectralDnMap:
    """Diagonal multiplier sequence ``lambda_n = base*|n| + excess_n``, n = 0..N.

    Rotational symmetry makes ``lambda_{-n} = lambda_n``; only nonnegative
    modes are stored and ``lambda_0 = 0``.
    """

    N: int
    excess: np.ndarray
    base: float = 1.0
    label: str = field(default="", compare=False)

    def __post_init__(self):
        excess = np.asarray(self.excess, dtype=float)
        if excess.shape != (self.N + 1,):
            raise ValueError(f"expected {self.N + 1} excess entries, got shape {excess.shape}")
        if excess[0] != 0.0:
            raise ValueError("mode 0 must carry no multiplier (quotient by constants)")
        object.__setattr__(self, "excess", excess)

    @property
    def multipliers(self) -> np.ndarray:
        """``lambda_n`` for ``n = 0..N``."""
        return self.base * np.arange(self.N + 1) + self.excess

    def multiplier(self, n: int) -> float:
        n = abs(n)
        if n > self.N:
            raise IndexError(f"mode {n} beyond truncation N={self.N}")
        return float(self.base * n + self.excess[n])

    def __sub__(self, other: "SpectralDnMap") -> "SpectralDnMap":
        if self.N != other.N:
            raise ValueError(f"truncation mismatch: {self.N} vs {other.N}")
        return SpectralDnMap(self.N, self.excess - other.excess, self.base - other.base)


def ellipticity_k(K: float) -> float:
    """Contrast parameter ``(K-1)/(K+1)`` in ``[0, 1)``."""
    if not np.isfinite(K) or K < 1.0:
        raise ValueError(f"ellipticity bound K must be >= 1, got {K!r}")
    return (K - 1.0) / (K + 1.0)


def _excess(mu: float, r: float, n: np.ndarray) -> np.ndarray:
    # lambda_n - |n| = 2|n| mu t / (1 - mu t), t = r^{2|n|}
    n = np.abs(n)
    t = r ** (2.0 * n)
    return 2.0 * n * mu * t / (1.0 - mu * t)


def dn_multiplier(profile: ConcentricProfile, n: int) -> float:
    """D-N multiplier of mode ``n`` for a concentric two-phase profile."""
    if n == 0:
        return 0.0
    return float(abs(n) + _excess(profile.mu, profile.r, np.array(n)))


def dn_map(profile: ConcentricProfile, N: int = DEFAULT_TRUNCATION) -> SpectralDnMap:
    """Multiplier table of ``profile`` for modes ``0..N``."""
    if N < 0:
        raise ValueError(f"truncation must be nonnegative, got {N}")
    excess = _excess(profile.mu, profile.r, np.arange(N + 1))
    return SpectralDnMap(N, excess, label=f"c={profile.c!r}, r={profile.r!r}")


def extreme_maps(contrast: Contrast, r: float, N: int = DEFAULT_TRUNCATION) -> tuple[SpectralDnMap, SpectralDnMap]:
    """Maps of the two extreme conductivities (value K and 1/K on ``B_r(0)``)."""
    return (
        dn_map(ConcentricProfile(contrast.K, r), N),
        dn_map(ConcentricProfile(1.0 / contrast.K, r), N),
    )


def apply_dn(dn: SpectralDnMap, phi: FourierBoundaryData) -> FourierBoundaryData:
    if dn.N < phi.N:
        raise ValueError(f"map truncation N={dn.N} is below data truncation N={phi.N}")
    lam = dn.multipliers[np.abs(phi.modes)]
    return FourierBoundaryData(phi.N, lam * phi.coeffs)


def _weights(phi: FourierBoundaryData) -> np.ndarray:
    return np.abs(phi.coeffs) ** 2


def h_half_norm(phi: FourierBoundaryData) -> float:
    """Trace seminorm ``sqrt(2 pi sum |n| |phi_n|^2)``; zero exactly for constants."""
    return float(np.sqrt(2.0 * np.pi * np.sum(np.abs(phi.modes) * _weights(phi))))


def quadratic_form(dn: SpectralDnMap, phi: FourierBoundaryData) -> float:
    """Dirichlet energy ``2 pi sum lambda_n |phi_n|^2`` of the solution with data ``phi``."""
    if dn.N < phi.N:
        raise ValueError(f"map truncation N={dn.N} is below data truncation N={phi.N}")
    lam = dn.multipliers[np.abs(phi.modes)]
    return float(2.0 * np.pi * np.sum(lam * _weights(phi)))


def op_norm_diff_extremes(contrast: Contrast, r: float) -> float:
    """Closed-form ``||Lambda_K - Lambda_{1/K}||_* = 4 k r^2 / (1 - k^2 r^4)``."""
    if not (0.0 < r < 1.0):
        raise ValueError(f"inclusion radius must lie in (0, 1), got {r!r}")
    kr2 = contrast.k * r * r
    return 4.0 * kr2 / ((1.0 - kr2) * (1.0 + kr2))


def op_norm_diff_numeric(map_a: SpectralDnMap, map_b: SpectralDnMap) -> tuple[float, int]:
    """Operator norm of ``map_a - map_b`` by brute force over modes ``1..N``.

    Both maps are self-adjoint and diagonal, so the norm is the largest
    ratio ``|lambda^A_n - lambda^B_n| / n``.  Returns ``(value, n_attained)``.
    """
    if map_a.N != map_b.N:
        raise ValueError(f"truncation mismatch: {map_a.N} vs {map_b.N}")
    if map_a.N < 1:
        raise ValueError("need at least one nonzero mode")
    ratios = mode_ratios(map_a, map_b)
    i = int(np.argmax(ratios))
    return float(ratios[i]), i + 1


def mode_ratios(map_a: SpectralDnMap, map_b: SpectralDnMap) -> np.ndarray:
    """``|lambda^A_n - lambda^B_n| / n`` for ``n = 1..N``."""
    diff = map_a - map_b
    n = np.arange(1, diff.N + 1)
    return np.abs(diff.base + diff.excess[1:] / n)
