"""Uniform periodic square grid and two-component spinor fields.

Coordinates are origin centred, ``x, y in [-L/2, L/2)``; arrays are indexed
``[iy, ix]``.  Derivatives are Fourier spectral with the Nyquist mode of the
first derivative dropped, so ``d/dz`` and ``-d/dz*`` are exact adjoints on the
grid.  Convention: ``z = x + iy``, ``d/dz = (d/dx - i d/dy)/2``.
"""

from __future__ import annotations

import csv
import os
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft


def fft_workers() -> int:
    """Worker count for FFTs; ``SUSY_PAULI_THREADS=0`` (or unset) means all cores."""
    raw = os.environ.get("SUSY_PAULI_THREADS", "0").strip() or "0"
    n = int(raw)
    return -1 if n <= 0 else n


class GridMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    N: int
    L: float

    def __post_init__(self):
        if self.N < 16 or self.N & (self.N - 1):
            raise ValueError(f"N must be a power of two >= 16, got {self.N}")
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")

    @property
    def dx(self) -> float:
        return self.L / self.N

    @cached_property
    def x(self) -> np.ndarray:
        return -self.L / 2 + self.dx * np.arange(self.N)

    @cached_property
    def Z(self) -> np.ndarray:
        X, Y = np.meshgrid(self.x, self.x, indexing="xy")
        return X + 1j * Y

    @cached_property
    def Zc(self) -> np.ndarray:
        return np.conj(self.Z)

    @cached_property
    def R2(self) -> np.ndarray:
        return np.abs(self.Z) ** 2

    @cached_property
    def k(self) -> np.ndarray:
        """First-derivative wavenumbers with the Nyquist entry zeroed."""
        k = 2 * np.pi * sfft.fftfreq(self.N, d=self.dx)
        k[self.N // 2] = 0.0
        return k

    @cached_property
    def _symbols(self) -> tuple[np.ndarray, np.ndarray]:
        KX, KY = np.meshgrid(self.k, self.k, indexing="xy")
        # d/dz -> (i kx + ky)/2, d/dz* -> (i kx - ky)/2
        return 0.5 * (1j * KX + KY), 0.5 * (1j * KX - KY)

    @property
    def kmax(self) -> float:
        return np.pi * self.N / self.L


def _fft(u):
    return sfft.fft2(u, workers=fft_workers())


def _ifft(u):
    return sfft.ifft2(u, workers=fft_workers())


def d_dz(u: np.ndarray, spec: GridSpec) -> np.ndarray:
    return _ifft(spec._symbols[0] * _fft(u))


def d_dzbar(u: np.ndarray, spec: GridSpec) -> np.ndarray:
    return _ifft(spec._symbols[1] * _fft(u))


def d_both(u: np.ndarray, spec: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """(du/dz, du/dz*) sharing one forward transform."""
    uh = _fft(u)
    mz, mzb = spec._symbols
    return _ifft(mz * uh), _ifft(mzb * uh)


@dataclass(frozen=True, eq=False)
class SpinorField:
    """Spin-up and spin-down components on a grid, stamped with a time."""

    up: np.ndarray
    down: np.ndarray
    spec: GridSpec
    t: float = 0.0

    def __post_init__(self):
        shape = (self.spec.N, self.spec.N)
        for name in ("up", "down"):
            arr = np.array(getattr(self, name), dtype=complex)
            if arr.shape != shape:
                raise ValueError(f"{name} component has shape {arr.shape}, expected {shape}")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def zeros(cls, spec: GridSpec, t: float = 0.0) -> SpinorField:
        z = np.zeros((spec.N, spec.N), dtype=complex)
        return cls(z, z, spec, t)

    def with_components(self, up, down) -> SpinorField:
        return SpinorField(up, down, self.spec, self.t)

    def at_time(self, t: float) -> SpinorField:
        return SpinorField(self.up, self.down, self.spec, t)

    def _check(self, other: SpinorField):
        if other.spec != self.spec:
            raise GridMismatchError(f"grid mismatch: {self.spec} vs {other.spec}")

    def __add__(self, other: SpinorField) -> SpinorField:
        self._check(other)
        return self.with_components(self.up + other.up, self.down + other.down)

    def __sub__(self, other: SpinorField) -> SpinorField:
        self._check(other)
        return self.with_components(self.up - other.up, self.down - other.down)

    def __mul__(self, c) -> SpinorField:
        return self.with_components(c * self.up, c * self.down)

    __rmul__ = __mul__

    def __neg__(self) -> SpinorField:
        return self * -1

    def norm(self) -> float:
        return float(np.sqrt(inner(self, self).real))

    def boundary_amplitude(self) -> float:
        """Largest |psi| on the outer rows/columns relative to the peak."""
        peak = max(np.abs(self.up).max(), np.abs(self.down).max())
        if peak == 0:
            return 0.0
        edge = 0.0
        for c in (self.up, self.down):
            a = np.abs(c)
            edge = max(edge, a[0].max(), a[-1].max(), a[:, 0].max(), a[:, -1].max())
        return float(edge / peak)

    # IO ------------------------------------------------------------------
    def save(self, path) -> None:
        """Binary snapshot: int64 N, float64 L, float64 t, then up and down as
        row-major complex128 (little endian)."""
        with open(path, "wb") as fh:
            fh.write(struct.pack("<qdd", self.spec.N, self.spec.L, self.t))
            fh.write(np.ascontiguousarray(self.up, dtype="<c16").tobytes())
            fh.write(np.ascontiguousarray(self.down, dtype="<c16").tobytes())

    @classmethod
    def load(cls, path) -> SpinorField:
        with open(path, "rb") as fh:
            N, L, t = struct.unpack("<qdd", fh.read(24))
            data = np.frombuffer(fh.read(), dtype="<c16")
        if data.size != 2 * N * N:
            raise ValueError(f"{path}: expected {2 * N * N} complex values, found {data.size}")
        spec = GridSpec(int(N), float(L))
        return cls(data[: N * N].reshape(N, N), data[N * N :].reshape(N, N), spec, float(t))

    def to_csv(self, path) -> None:
        Z = self.spec.Z
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "y", "Re_up", "Im_up", "Re_dn", "Im_dn"])
            for z, u, d in zip(Z.ravel(), self.up.ravel(), self.down.ravel()):
                w.writerow([repr(float(v)) for v in (z.real, z.imag, u.real, u.imag, d.real, d.imag)])


def inner(a: SpinorField, b: SpinorField) -> complex:
    """<a|b> with the trapezoidal (spectrally exact) weight dx^2."""
    a._check(b)
    s = np.vdot(a.up, b.up) + np.vdot(a.down, b.down)
    return complex(s * a.spec.dx**2)


def fourier_norm(field: SpinorField) -> float:
    """Norm evaluated in Fourier space (Parseval)."""
    N = field.spec.N
    tot = sum(np.sum(np.abs(_fft(c)) ** 2) for c in (field.up, field.down))
    return float(np.sqrt(tot / N**2) * field.spec.dx)
