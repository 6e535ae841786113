"""Synchronous DS-CDMA downlink signal model.

One symbol period spreads each user's QPSK symbol over ``n_chips`` chips with
a unit-norm binary signature; all users share a common multipath downlink
channel with ``n_paths`` chip-spaced taps, of which three carry a
0 / -3 / -9 dB power profile with random spacing.  The receiver observes
``window_len = n_chips + n_paths - 1`` chip-rate samples per symbol, so each
window also sees the tails of the previous and the head of the next symbol
(intersymbol interference).

The received windows are produced by exact chip-rate convolution of the
concatenated transmit chip stream with the channel taps of the observed
symbol, plus circular complex Gaussian noise.  Summation order (ascending
user, then ascending path, then noise) is part of the contract so an
independent re-implementation reproduces the samples bit for bit.

Path gains evolve by a sum-of-sinusoids generator with the classic
isotropic-scattering statistics (Rayleigh envelope, Bessel autocorrelation):
per path, ``n_oscillators`` equally spaced arrival angles over a half circle
with a random rotation, a random phase per oscillator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

SQRT2 = float(np.sqrt(2.0))


@dataclass
class CdmaConfig:
    """Dimensions and operating point of the downlink scenario.

    ``amplitudes`` defaults to unit amplitude for every user; user 0 is the
    desired user.  ``snr_db`` is the desired user's bit energy over the noise
    spectral density: with unit-norm signatures and unit total channel power
    the bit energy is ``amplitudes[0]**2``, so the per-sample complex noise
    variance is ``amplitudes[0]**2 * 10**(-snr_db / 10)``.  ``doppler`` is
    the normalized Doppler rate (cycles per symbol).  ``seed`` is only a
    convenience default for standalone use; the experiment harness manages
    its own per-run generators.
    """

    n_users: int = 8
    n_chips: int = 32
    n_paths: int = 9
    snr_db: float = 15.0
    doppler: float = 1e-4
    amplitudes: tuple[float, ...] | None = None
    path_profile_db: tuple[float, ...] = (0.0, -3.0, -9.0)
    seed: int = 0

    def __post_init__(self):
        if self.n_users < 1 or self.n_chips < 1 or self.n_paths < 1:
            raise ValueError("n_users, n_chips and n_paths must be >= 1")
        if self.amplitudes is None:
            self.amplitudes = (1.0,) * self.n_users
        else:
            self.amplitudes = tuple(float(a) for a in self.amplitudes)
        if len(self.amplitudes) != self.n_users:
            raise ValueError("need one amplitude per user")
        if any(a < 0 for a in self.amplitudes):
            raise ValueError("amplitudes must be non-negative")
        if self.doppler < 0:
            raise ValueError("doppler must be non-negative")
        self.path_profile_db = tuple(float(p) for p in self.path_profile_db)

    @property
    def window_len(self) -> int:
        """Observed samples per symbol: n_chips + n_paths - 1."""
        return self.n_chips + self.n_paths - 1

    @property
    def noise_variance(self) -> float:
        """Per-sample complex noise variance implied by ``snr_db``."""
        return float(self.amplitudes[0] ** 2 * 10.0 ** (-self.snr_db / 10.0))


def generate_signatures(n_users: int, n_chips: int, rng: np.random.Generator) -> np.ndarray:
    """Draw pairwise-distinct random binary signatures.

    Returns an ``(n_users, n_chips)`` array with entries ``+-1/sqrt(n_chips)``,
    each row unit norm.  Deterministic for a given generator state.
    """
    if n_users < 1 or n_chips < 1:
        raise ValueError("n_users and n_chips must be >= 1")
    if n_users > 2**n_chips:
        raise ValueError(
            f"cannot draw {n_users} distinct length-{n_chips} binary sequences"
        )
    scale = 1.0 / np.sqrt(n_chips)
    seen: set[bytes] = set()
    rows = []
    while len(rows) < n_users:
        bits = rng.integers(0, 2, size=n_chips)
        key = bits.tobytes()
        if key in seen:
            continue
        seen.add(key)
        rows.append((2.0 * bits - 1.0) * scale)
    return np.asarray(rows)


def build_convolution_matrix(signature, n_paths: int, symbol_shift: int = 0) -> np.ndarray:
    """Stack one-chip-shifted copies of a signature into columns.

    Column ``l`` of the ``(window_len, n_paths)`` result holds the signature
    delayed by ``l`` chips; ``symbol_shift`` additionally delays by whole
    symbols (+1 for the next symbol, -1 for the previous), producing the
    windows through which adjacent symbols leak.
    """
    if n_paths < 1:
        raise ValueError("n_paths must be >= 1")
    s = np.asarray(signature, dtype=np.float64)
    if s.ndim != 1:
        raise ValueError("signature must be a vector")
    n_chips = s.size
    window_len = n_chips + n_paths - 1
    mat = np.zeros((window_len, n_paths))
    for path in range(n_paths):
        lo = path + symbol_shift * n_chips
        hi = lo + n_chips
        a, b = max(lo, 0), min(hi, window_len)
        if a < b:
            mat[a:b, path] = s[a - lo : b - lo]
    return mat


class ClarkeChannel:
    """Time-varying multipath channel with isotropic-scattering fading.

    Three (or ``len(profile_db)``) active paths are placed at chip delays
    ``0, g1, g1 + g2`` with the gaps drawn uniformly from ``{0, 1, 2}``
    (clipped into the tap range; coinciding paths add).  Each path's complex
    gain is a sum of ``n_oscillators`` random-phase sinusoids whose Doppler
    shifts come from equally spaced arrival angles over a half circle with a
    random rotation, giving the expected power profile exactly and the
    classic Bessel-shaped autocorrelation at rate ``doppler`` cycles/symbol.
    Zero Doppler freezes the gains.
    """

    def __init__(
        self,
        n_paths: int,
        doppler: float,
        rng: np.random.Generator,
        profile_db: tuple[float, ...] = (0.0, -3.0, -9.0),
        n_oscillators: int = 16,
    ):
        if n_paths < 1:
            raise ValueError("n_paths must be >= 1")
        if doppler < 0:
            raise ValueError("doppler must be non-negative")
        if n_oscillators < 1:
            raise ValueError("n_oscillators must be >= 1")
        self.n_paths = int(n_paths)
        self.doppler = float(doppler)
        self.n_oscillators = int(n_oscillators)
        powers = 10.0 ** (np.asarray(profile_db, dtype=np.float64) / 10.0)
        self.path_powers = powers / powers.sum()
        n_active = self.path_powers.size

        gaps = rng.integers(0, 3, size=max(n_active - 1, 0))
        positions = np.concatenate(([0], np.cumsum(gaps))).astype(np.intp)
        self.positions = np.minimum(positions, self.n_paths - 1)

        # one random angle-bank rotation and phase set per path, per run
        self._omegas = np.empty((n_active, self.n_oscillators))
        self._phases = np.empty((n_active, self.n_oscillators))
        for p in range(n_active):
            angles = (np.arange(self.n_oscillators) + rng.random()) * (
                np.pi / self.n_oscillators
            )
            self._omegas[p] = 2.0 * np.pi * self.doppler * np.cos(angles)
            self._phases[p] = rng.uniform(0.0, 2.0 * np.pi, self.n_oscillators)
        self._t = 0

    def path_gain_series(self, path: int, n_symbols: int) -> np.ndarray:
        """Gains of one active path for the next ``n_symbols`` symbols
        (does not advance the channel clock)."""
        t = np.arange(self._t, self._t + n_symbols, dtype=np.float64)
        osc = np.exp(1j * (np.outer(t, self._omegas[path]) + self._phases[path]))
        scale = np.sqrt(self.path_powers[path] / self.n_oscillators)
        return scale * osc.sum(axis=1)

    def run(self, n_symbols: int) -> np.ndarray:
        """Advance ``n_symbols`` symbols; returns ``(n_symbols, n_paths)``
        tap gains (coinciding paths accumulate on their tap)."""
        gains = np.zeros((n_symbols, self.n_paths), dtype=np.complex128)
        for p, pos in enumerate(self.positions):
            gains[:, pos] += self.path_gain_series(p, n_symbols)
        self._t += n_symbols
        return gains

    def step(self) -> np.ndarray:
        """Tap gains for the current symbol; advances one symbol."""
        return self.run(1)[0]


def qpsk_symbols(rng: np.random.Generator, n_users: int, n_symbols: int) -> np.ndarray:
    """Uniform unit-power QPSK symbols, shape ``(n_users, n_symbols)``."""
    re = 2.0 * rng.integers(0, 2, size=(n_users, n_symbols)) - 1.0
    im = 2.0 * rng.integers(0, 2, size=(n_users, n_symbols)) - 1.0
    return (re + 1j * im) / SQRT2


def detect_qpsk(y):
    """Quadrant slicer onto the QPSK constellation; zeros break toward +1."""
    y = np.asarray(y)
    re = np.where(y.real >= 0.0, 1.0, -1.0)
    im = np.where(y.imag >= 0.0, 1.0, -1.0)
    out = (re + 1j * im) / SQRT2
    return complex(out) if out.ndim == 0 else out


def generate_received(
    cfg: CdmaConfig,
    signatures: np.ndarray,
    path_gains: np.ndarray,
    symbols: np.ndarray,
    rng: np.random.Generator,
    noise_var: float | None = None,
) -> np.ndarray:
    """Received observation windows for a block of symbols.

    Builds the superposed transmit chip stream (ascending user order), runs
    it through the per-symbol channel taps by windowed chip-rate convolution
    (ascending path order), and adds noise.  ``path_gains`` has shape
    ``(n_symbols, n_paths)`` and ``symbols`` ``(n_users, n_symbols)``.

    Noise variates are always drawn -- two ``standard_normal`` blocks of
    shape ``(n_symbols, window_len)``, real then imaginary -- even at zero
    variance, so a seeded generator yields the same stream at any SNR.

    Returns ``(n_symbols, window_len)`` complex samples.
    """
    sigs = np.asarray(signatures, dtype=np.float64)
    gains = np.asarray(path_gains, dtype=np.complex128)
    b = np.asarray(symbols, dtype=np.complex128)
    if sigs.shape != (cfg.n_users, cfg.n_chips):
        raise ValueError("signatures shape does not match the configuration")
    n_symbols = b.shape[1] if b.ndim == 2 else 0
    if b.shape != (cfg.n_users, n_symbols) or n_symbols < 1:
        raise ValueError("symbols must be (n_users, n_symbols) with n_symbols >= 1")
    if gains.shape != (n_symbols, cfg.n_paths):
        raise ValueError("path_gains must be (n_symbols, n_paths)")
    if noise_var is None:
        noise_var = cfg.noise_variance

    n_chips, n_paths = cfg.n_chips, cfg.n_paths
    window_len = cfg.window_len

    chips = np.zeros((n_symbols, n_chips), dtype=np.complex128)
    for k in range(cfg.n_users):
        chips += (cfg.amplitudes[k] * b[k])[:, None] * sigs[k][None, :]

    pad = n_paths - 1
    stream = np.concatenate(
        [np.zeros(pad, np.complex128), chips.ravel(), np.zeros(pad, np.complex128)]
    )
    windows = np.lib.stride_tricks.sliding_window_view(stream, window_len)
    starts = n_chips * np.arange(n_symbols)
    signal_re = np.zeros((n_symbols, window_len))
    signal_im = np.zeros((n_symbols, window_len))
    for path in range(n_paths):
        g = gains[:, path][:, None]
        w = windows[starts + pad - path]
        # split-plane product: the vectorized complex-multiply loop may fuse
        # operations and round differently from scalar arithmetic, which
        # would break the bit-level reproducibility promised above
        signal_re += g.real * w.real - g.imag * w.imag
        signal_im += g.real * w.imag + g.imag * w.real

    scale = np.sqrt(noise_var / 2.0)
    noise_re = rng.standard_normal((n_symbols, window_len))
    noise_im = rng.standard_normal((n_symbols, window_len))
    received = np.empty((n_symbols, window_len), dtype=np.complex128)
    received.real = signal_re + scale * noise_re
    received.imag = signal_im + scale * noise_im
    return received


class MmseReceiver:
    """Clairvoyant linear MMSE receiver for user 0.

    Knows every signature, every amplitude and the noise variance; given a
    channel snapshot it solves the normal equations whose covariance sums
    the current, previous and next symbol windows of every user (the exact
    interference structure of :func:`generate_received`) plus the noise
    floor.  Recompute per symbol while the channel fades.
    """

    _SHIFTS = (-1, 0, 1)

    def __init__(self, cfg: CdmaConfig, signatures: np.ndarray):
        sigs = np.asarray(signatures, dtype=np.float64)
        if sigs.shape != (cfg.n_users, cfg.n_chips):
            raise ValueError("signatures shape does not match the configuration")
        self.cfg = cfg
        mats, weights = [], []
        for k in range(cfg.n_users):
            for shift in self._SHIFTS:
                mats.append(build_convolution_matrix(sigs[k], cfg.n_paths, shift))
                weights.append(cfg.amplitudes[k] ** 2)
        self._mats = np.stack(mats)  # (3 * n_users, window_len, n_paths)
        self._weights = np.asarray(weights)
        self._desired = build_convolution_matrix(sigs[0], cfg.n_paths, 0)

    def filter_for(self, channel_gains, noise_var: float) -> np.ndarray:
        """MMSE filter for one channel snapshot (length ``n_paths`` gains)."""
        h = np.asarray(channel_gains, dtype=np.complex128)
        if h.shape != (self.cfg.n_paths,):
            raise ValueError("channel snapshot must have one gain per path")
        eff = self._mats @ h  # (3 * n_users, window_len)
        cov = (eff.T * self._weights) @ np.conj(eff)
        cov[np.diag_indices_from(cov)] += noise_var + 1e-10
        steering = self.cfg.amplitudes[0] * (self._desired @ h)
        try:
            return np.linalg.solve(cov, steering)
        except np.linalg.LinAlgError:
            warnings.warn(
                "MMSE covariance singular despite regularization; "
                "falling back to a pseudo-inverse solution",
                RuntimeWarning,
                stacklevel=2,
            )
            return np.linalg.pinv(cov) @ steering


def mmse_filter(
    cfg: CdmaConfig, signatures, channel_gains, noise_var: float
) -> np.ndarray:
    """One-shot MMSE filter; see :class:`MmseReceiver` for the model."""
    return MmseReceiver(cfg, signatures).filter_for(channel_gains, noise_var)
