"""Experiment orchestration: seeded Monte-Carlo BER runs, sweeps, and the CLI.

A run streams packets of QPSK symbols through the downlink model and one
receiver scheme, averaging per-symbol statistics over independent seeded
runs (run ``i`` uses generator seed ``base_seed + i``, so results are
reproducible bit for bit and independent of how many runs execute in
parallel).  Supported schemes:

==============  ==============================================================
``fullrank``    single LMS filter over the whole window
``clms``        convex combination of two full-tap LMS filters
``jidf``        single reduced-rank interpolation/decimation/filtering filter
``scheme_a``    tree combination of four reduced-rank filters
``scheme_b``    combination of two reduced-rank filters
``mmse``        clairvoyant MMSE filter recomputed every symbol
==============  ==============================================================

Training is supervised by default (the desired response is the true symbol
for the whole packet; errors are still counted on the slicer decisions).
``train_mode: semi`` switches to decision-directed operation after
``train_symbols`` supervised symbols.

The ``RRFILT_THREADS`` environment variable caps the number of worker
processes (``0`` or unset means one per CPU).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import yaml

from .cdma import (
    CdmaConfig,
    ClarkeChannel,
    MmseReceiver,
    detect_qpsk,
    generate_received,
    generate_signatures,
    qpsk_symbols,
)
from .combiners import Clms, SchemeA, SchemeB
from .filters import FullRankLms, JidfFilter

SCHEMES = ("fullrank", "clms", "jidf", "scheme_a", "scheme_b", "mmse")
_BRANCH_COUNT = {"fullrank": 1, "clms": 2, "jidf": 1, "scheme_a": 4, "scheme_b": 2, "mmse": 0}
_JIDF_FAMILY = ("jidf", "scheme_a", "scheme_b")


class ConfigError(ValueError):
    """Raised for malformed or inconsistent experiment configurations."""


@dataclass
class BranchParams:
    """Parameters of one constituent filter.

    Reduced-rank constituents need all four fields; ``fullrank``/``clms``
    constituents are plain LMS filters and take only ``mu``.
    """

    mu: float
    rank: int | None = None
    interp_len: int | None = None
    eta: float | None = None


@dataclass
class CombinerSteps:
    """Step sizes of the combination nodes (only the nodes a scheme actually
    has are read)."""

    mu_a: float = 0.25
    mu_b: float = 0.25
    mu_c: float = 0.25


@dataclass
class ExperimentConfig:
    scheme: str
    cdma: CdmaConfig = field(default_factory=CdmaConfig)
    n_symbols: int = 1500
    n_runs: int = 100
    seed: int = 0
    train_mode: str = "supervised"
    train_symbols: int = 200
    n_branches: int = 8
    branches: list[BranchParams] = field(default_factory=list)
    combiners: CombinerSteps = field(default_factory=CombinerSteps)
    u_max: float = 4.0
    out: str | None = None  # default CSV path; the CLI --out flag overrides

    def validate(self) -> None:
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; pick one of {SCHEMES}")
        if self.n_symbols < 1 or self.n_runs < 1:
            raise ConfigError("n_symbols and n_runs must be >= 1")
        if self.train_mode not in ("supervised", "semi"):
            raise ConfigError("train_mode must be 'supervised' or 'semi'")
        if self.train_mode == "semi" and self.train_symbols < 0:
            raise ConfigError("train_symbols must be >= 0")
        expected = _BRANCH_COUNT[self.scheme]
        if len(self.branches) != expected:
            raise ConfigError(
                f"scheme {self.scheme!r} needs exactly {expected} branch entries, "
                f"got {len(self.branches)}"
            )
        if self.scheme in _JIDF_FAMILY:
            if self.n_branches < 1:
                raise ConfigError("n_branches must be >= 1")
            for i, b in enumerate(self.branches):
                if b.rank is None or b.interp_len is None or b.eta is None:
                    raise ConfigError(
                        f"branch {i}: reduced-rank constituents need rank, "
                        "interp_len, eta and mu"
                    )
        else:
            for i, b in enumerate(self.branches):
                if not (b.rank is None and b.interp_len is None and b.eta is None):
                    raise ConfigError(
                        f"branch {i}: scheme {self.scheme!r} constituents take only mu"
                    )
        if self.u_max <= 0:
            raise ConfigError("u_max must be positive")


@dataclass
class ExperimentRecord:
    """Run-averaged per-symbol trajectories plus summary scalars.

    ``cumulative_ber[i]`` is the error ratio of the slicer decisions over
    symbols ``0..i``; ``mse[i]`` the run-averaged instantaneous squared error
    of the scheme output.  Mixing trajectories and branch statistics are
    ``None`` for schemes that do not have them.  Diverged runs (non-finite
    filter state) are excluded from every average and counted.
    """

    scheme: str
    n_symbols: int
    n_runs: int
    diverged_runs: int
    cumulative_ber: np.ndarray
    mse: np.ndarray
    lambda_a: np.ndarray | None
    lambda_b: np.ndarray | None
    lambda_c: np.ndarray | None
    b_opt_mode: np.ndarray | None
    branch_hist: np.ndarray | None
    per_run_ber: np.ndarray
    final_ber: float
    wall_time: float
    complexity: tuple[int, int] | None


# ---------------------------------------------------------------------------
# configuration file handling
# ---------------------------------------------------------------------------

_TOP_KEYS = {
    "scheme", "cdma", "n_symbols", "n_runs", "seed", "train_mode",
    "train_symbols", "n_branches", "branches", "combiners", "u_max", "out",
}
_CDMA_KEYS = {"users", "chips", "paths", "snr_db", "doppler", "amplitudes", "path_profile_db"}
_BRANCH_KEYS = {"mu", "rank", "interp_len", "eta"}
_COMBINER_KEYS = {"mu_a", "mu_b", "mu_c"}


def _reject_unknown(mapping: dict, allowed: set, where: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build and validate an :class:`ExperimentConfig` from plain mappings
    (the parsed form of a config file).  Unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ConfigError("configuration root must be a mapping")
    _reject_unknown(data, _TOP_KEYS, "configuration")
    if "scheme" not in data:
        raise ConfigError("configuration must name a scheme")

    cdma_data = data.get("cdma", {})
    if not isinstance(cdma_data, dict):
        raise ConfigError("cdma section must be a mapping")
    _reject_unknown(cdma_data, _CDMA_KEYS, "cdma")
    try:
        cdma = CdmaConfig(
            n_users=int(cdma_data.get("users", 8)),
            n_chips=int(cdma_data.get("chips", 32)),
            n_paths=int(cdma_data.get("paths", 9)),
            snr_db=float(cdma_data.get("snr_db", 15.0)),
            doppler=float(cdma_data.get("doppler", 1e-4)),
            amplitudes=cdma_data.get("amplitudes"),
            path_profile_db=tuple(cdma_data.get("path_profile_db", (0.0, -3.0, -9.0))),
        )
    except ValueError as exc:
        raise ConfigError(f"cdma section: {exc}") from exc

    branches = []
    for i, entry in enumerate(data.get("branches", []) or []):
        if not isinstance(entry, dict):
            raise ConfigError(f"branch {i} must be a mapping")
        _reject_unknown(entry, _BRANCH_KEYS, f"branch {i}")
        if "mu" not in entry:
            raise ConfigError(f"branch {i} needs a mu")
        branches.append(
            BranchParams(
                mu=float(entry["mu"]),
                rank=None if entry.get("rank") is None else int(entry["rank"]),
                interp_len=None if entry.get("interp_len") is None else int(entry["interp_len"]),
                eta=None if entry.get("eta") is None else float(entry["eta"]),
            )
        )

    comb_data = data.get("combiners", {}) or {}
    if not isinstance(comb_data, dict):
        raise ConfigError("combiners section must be a mapping")
    _reject_unknown(comb_data, _COMBINER_KEYS, "combiners")
    combiners = CombinerSteps(
        mu_a=float(comb_data.get("mu_a", 0.25)),
        mu_b=float(comb_data.get("mu_b", 0.25)),
        mu_c=float(comb_data.get("mu_c", 0.25)),
    )

    cfg = ExperimentConfig(
        scheme=str(data["scheme"]),
        cdma=cdma,
        n_symbols=int(data.get("n_symbols", 1500)),
        n_runs=int(data.get("n_runs", 100)),
        seed=int(data.get("seed", 0)),
        train_mode=str(data.get("train_mode", "supervised")),
        train_symbols=int(data.get("train_symbols", 200)),
        n_branches=int(data.get("n_branches", 8)),
        branches=branches,
        combiners=combiners,
        u_max=float(data.get("u_max", 4.0)),
        out=None if data.get("out") is None else str(data["out"]),
    )
    cfg.validate()
    return cfg


def load_config(path) -> ExperimentConfig:
    """Parse a YAML experiment configuration; fails fast on unknown keys."""
    with open(path, "r", encoding="utf-8") as handle:
        data = yaml.safe_load(handle)
    if data is None:
        raise ConfigError(f"{path}: empty configuration")
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# complexity formulas
# ---------------------------------------------------------------------------


def complexity_report(
    num_taps: int,
    interp_lens=(),
    ranks=(),
    n_branches: int = 1,
    scheme: str = "jidf",
) -> tuple[int, int]:
    """Per-symbol real additions and multiplications of a scheme.

    Closed forms with window length ``M``, interpolator lengths ``I_j``,
    reduced ranks ``D_j`` and ``B`` decimation branches:

    * ``fullrank``: ``2M`` additions, ``2M + 1`` multiplications,
    * ``clms``: ``4M + 5`` additions, ``4M + 6`` multiplications,
    * reduced-rank constituent ``j``: ``M (I_j - 1) + (B + 1) D_j + 2 I_j``
      additions and ``M I_j + (B + 2) D_j`` multiplications; ``jidf``,
      ``scheme_b`` and ``scheme_a`` sum 1, 2 and 4 constituents.
    """
    if num_taps < 1:
        raise ValueError("num_taps must be >= 1")
    m = int(num_taps)
    if scheme == "fullrank":
        return 2 * m, 2 * m + 1
    if scheme == "clms":
        return 4 * m + 5, 4 * m + 6
    if scheme in _JIDF_FAMILY:
        interp_lens = [int(i) for i in interp_lens]
        ranks = [int(d) for d in ranks]
        expected = _BRANCH_COUNT[scheme]
        if len(interp_lens) != expected or len(ranks) != expected:
            raise ValueError(
                f"scheme {scheme!r} needs {expected} interpolator lengths and ranks"
            )
        if min(interp_lens) < 1 or min(ranks) < 1 or n_branches < 1:
            raise ValueError("interpolator lengths, ranks and n_branches must be >= 1")
        b = int(n_branches)
        adds = sum(m * (i - 1) + (b + 1) * d + 2 * i for i, d in zip(interp_lens, ranks))
        mults = sum(m * i + (b + 2) * d for i, d in zip(interp_lens, ranks))
        return adds, mults
    raise ValueError(f"no complexity formula for scheme {scheme!r}")


def _record_complexity(cfg: ExperimentConfig) -> tuple[int, int] | None:
    if cfg.scheme == "mmse":
        return None
    return complexity_report(
        cfg.cdma.window_len,
        [b.interp_len for b in cfg.branches],
        [b.rank for b in cfg.branches],
        cfg.n_branches,
        cfg.scheme,
    )


# ---------------------------------------------------------------------------
# single Monte-Carlo run
# ---------------------------------------------------------------------------


def _build_scheme(cfg: ExperimentConfig):
    m = cfg.cdma.window_len
    if cfg.scheme == "fullrank":
        return FullRankLms(m, cfg.branches[0].mu)
    if cfg.scheme == "clms":
        lms = [FullRankLms(m, b.mu) for b in cfg.branches]
        return Clms(lms, cfg.combiners.mu_a, u_max=cfg.u_max)
    jidf = [
        JidfFilter(m, b.interp_len, b.rank, cfg.n_branches, b.eta, b.mu)
        for b in cfg.branches
    ]
    if cfg.scheme == "jidf":
        return jidf[0]
    if cfg.scheme == "scheme_b":
        return SchemeB(jidf, cfg.combiners.mu_c, u_max=cfg.u_max)
    return SchemeA(
        jidf, cfg.combiners.mu_a, cfg.combiners.mu_b, cfg.combiners.mu_c,
        u_max=cfg.u_max,
    )


@dataclass
class _RunResult:
    errors: np.ndarray  # (n_symbols,) uint8 slicer-decision errors
    sq_err: np.ndarray  # (n_symbols,) |d - y|^2
    lambdas: np.ndarray  # (n_symbols, 3) mixing values, NaN where absent
    b_opt: np.ndarray  # (n_symbols,) first constituent branch, -1 where absent
    branch_hist: np.ndarray  # (n_branches,) selections over all constituents
    diverged: bool


def _single_run(cfg: ExperimentConfig, run_idx: int) -> _RunResult:
    rng = np.random.default_rng(cfg.seed + run_idx)
    cdma = cfg.cdma
    signatures = generate_signatures(cdma.n_users, cdma.n_chips, rng)
    channel = ClarkeChannel(
        cdma.n_paths, cdma.doppler, rng, profile_db=cdma.path_profile_db
    )
    symbols = qpsk_symbols(rng, cdma.n_users, cfg.n_symbols)
    gains = channel.run(cfg.n_symbols)
    received = generate_received(cdma, signatures, gains, symbols, rng)

    n = cfg.n_symbols
    errors = np.zeros(n, dtype=np.uint8)
    sq_err = np.full(n, np.nan)
    lambdas = np.full((n, 3), np.nan)
    b_opt = np.full(n, -1, dtype=np.int64)
    branch_hist = np.zeros(max(cfg.n_branches, 1), dtype=np.int64)
    desired_user = symbols[0]
    supervised_until = n if cfg.train_mode == "supervised" else cfg.train_symbols
    noise_var = cdma.noise_variance

    mmse = MmseReceiver(cdma, signatures) if cfg.scheme == "mmse" else None
    scheme = None if mmse is not None else _build_scheme(cfg)
    diverged = False

    # divergence is flagged, not raised: overflow inside a blowing-up filter
    # is expected for aggressive step sizes and the run is simply excluded
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(n):
            r = received[i]
            try:
                if mmse is not None:
                    w = mmse.filter_for(gains[i], noise_var)
                    y = complex(np.vdot(w, r))
                    d = desired_user[i] if i < supervised_until else detect_qpsk(y)
                    e = d - y
                elif cfg.scheme in ("fullrank", "jidf"):
                    if i < supervised_until:
                        d = desired_user[i]
                    else:
                        d = detect_qpsk(scheme.predict(r))
                    res = scheme.step(r, d)
                    y, e = res.y, res.e
                    if res.b_opt is not None:
                        b_opt[i] = res.b_opt
                        branch_hist[res.b_opt] += 1
                else:
                    if i < supervised_until:
                        d = desired_user[i]
                    else:
                        d = detect_qpsk(scheme.predict(r))
                    y, diag = scheme.step(r, d)
                    e = diag.e
                    for slot, val in enumerate(
                        (diag.lambda_a, diag.lambda_b, diag.lambda_c)
                    ):
                        if val is not None:
                            lambdas[i, slot] = val
                    if diag.branches is not None:
                        b_opt[i] = diag.branches[0]
                        for br in diag.branches:
                            branch_hist[br] += 1
            except ValueError:
                # the combiner's finiteness guard trips on diverged constituents
                diverged = True
                break
            err_sq = float(np.abs(np.complex128(e)) ** 2)
            if not (np.isfinite(y) and np.isfinite(err_sq)):
                diverged = True
                break
            errors[i] = detect_qpsk(y) != desired_user[i]
            sq_err[i] = err_sq

    return _RunResult(errors, sq_err, lambdas, b_opt, branch_hist, diverged)


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------


def _worker_count(n_runs: int) -> int:
    raw = os.environ.get("RRFILT_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigError(f"RRFILT_THREADS must be an integer, got {raw!r}") from None
    if cap < 0:
        raise ConfigError("RRFILT_THREADS must be >= 0")
    workers = os.cpu_count() or 1
    if cap > 0:
        workers = min(workers, cap)
    return max(1, min(workers, n_runs))


def run_experiment(cfg: ExperimentConfig) -> ExperimentRecord:
    """Run the configured Monte-Carlo experiment and aggregate it.

    Run ``i`` draws everything (signatures, path placement, fading, symbols,
    noise) from a generator seeded with ``cfg.seed + i``; the aggregation
    reduces runs in index order, so records are bit-for-bit reproducible for
    a given configuration regardless of worker count.
    """
    cfg.validate()
    t0 = time.perf_counter()
    workers = _worker_count(cfg.n_runs)
    if workers > 1 and cfg.n_runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_single_run, [cfg] * cfg.n_runs, range(cfg.n_runs)))
    else:
        runs = [_single_run(cfg, i) for i in range(cfg.n_runs)]

    good = [r for r in runs if not r.diverged]
    diverged = cfg.n_runs - len(good)
    n = cfg.n_symbols
    has_lambda = {"clms": (True, False, False), "scheme_b": (False, False, True),
                  "scheme_a": (True, True, True)}.get(cfg.scheme, (False, False, False))
    has_branches = cfg.scheme in _JIDF_FAMILY

    if good:
        err_counts = np.sum([r.errors for r in good], axis=0).astype(np.float64)
        cumulative = np.cumsum(err_counts) / (np.arange(1, n + 1) * len(good))
        mse = np.mean([r.sq_err for r in good], axis=0)
        lam = np.mean([r.lambdas for r in good], axis=0)
        hist = np.sum([r.branch_hist for r in good], axis=0)
        per_run = np.array(
            [r.errors.sum() / n if not r.diverged else np.nan for r in runs]
        )
        if has_branches:
            stacked = np.stack([r.b_opt for r in good])  # (runs, n)
            counts = np.zeros((cfg.n_branches, n), dtype=np.int64)
            cols = np.broadcast_to(np.arange(n), stacked.shape)
            np.add.at(counts, (stacked, cols), 1)
            mode = counts.argmax(axis=0)
        else:
            mode = None
    else:
        cumulative = np.full(n, np.nan)
        mse = np.full(n, np.nan)
        lam = np.full((n, 3), np.nan)
        hist = np.zeros(max(cfg.n_branches, 1), dtype=np.int64)
        per_run = np.full(cfg.n_runs, np.nan)
        mode = None

    return ExperimentRecord(
        scheme=cfg.scheme,
        n_symbols=n,
        n_runs=cfg.n_runs,
        diverged_runs=diverged,
        cumulative_ber=cumulative,
        mse=mse,
        lambda_a=lam[:, 0] if has_lambda[0] else None,
        lambda_b=lam[:, 1] if has_lambda[1] else None,
        lambda_c=lam[:, 2] if has_lambda[2] else None,
        b_opt_mode=mode,
        branch_hist=hist if has_branches else None,
        per_run_ber=per_run,
        final_ber=float(cumulative[-1]) if n else float("nan"),
        wall_time=time.perf_counter() - t0,
        complexity=_record_complexity(cfg),
    )


def snr_sweep(cfg: ExperimentConfig, snr_list) -> list[ExperimentRecord]:
    """Repeat the experiment at each SNR point with shared per-run seeds,
    so points are directly comparable (common random numbers)."""
    records = []
    for snr in snr_list:
        point = dataclasses.replace(
            cfg, cdma=dataclasses.replace(cfg.cdma, snr_db=float(snr))
        )
        records.append(run_experiment(point))
    return records


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    return f"{value:.10g}"


def write_csv(record: ExperimentRecord, path) -> None:
    """Per-symbol trajectories, one row per symbol (1-based index), ten
    significant digits; mixing/branch columns are empty when the scheme has
    none."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["symbol", "mse", "ber", "lambda_a", "lambda_b", "lambda_c", "b_opt_mode"]
            )
            for i in range(record.n_symbols):
                writer.writerow(
                    [
                        i + 1,
                        _fmt(record.mse[i]),
                        _fmt(record.cumulative_ber[i]),
                        _fmt(None if record.lambda_a is None else record.lambda_a[i]),
                        _fmt(None if record.lambda_b is None else record.lambda_b[i]),
                        _fmt(None if record.lambda_c is None else record.lambda_c[i]),
                        "" if record.b_opt_mode is None else int(record.b_opt_mode[i]),
                    ]
                )
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc


def write_sweep_csv(snr_list, records, path) -> None:
    """One row per SNR point: final BER and final-symbol MSE."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(["snr_db", "ber", "mse", "diverged_runs"])
            for snr, rec in zip(snr_list, records):
                writer.writerow(
                    [_fmt(float(snr)), _fmt(rec.final_ber), _fmt(rec.mse[-1]),
                     rec.diverged_runs]
                )
    except OSError as exc:
        raise OSError(f"cannot write sweep to {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# command-line interface
# ---------------------------------------------------------------------------


def _cli_config(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if getattr(args, "seed", None) is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


def _cmd_run(args) -> None:
    cfg = _cli_config(args)
    record = run_experiment(cfg)
    out = args.out or cfg.out or "results.csv"
    write_csv(record, out)
    print(
        f"scheme={record.scheme} runs={record.n_runs} "
        f"(diverged={record.diverged_runs}) symbols={record.n_symbols} "
        f"final_ber={record.final_ber:.4e} wall={record.wall_time:.1f}s"
    )
    print(f"wrote {out}")


def _cmd_sweep(args) -> None:
    cfg = _cli_config(args)
    snr_list = [float(s) for s in args.snr.split(",") if s.strip()]
    if not snr_list:
        raise ConfigError("--snr needs at least one value")
    records = snr_sweep(cfg, snr_list)
    out = args.out or cfg.out or "sweep.csv"
    write_sweep_csv(snr_list, records, out)
    for snr, rec in zip(snr_list, records):
        print(f"snr={snr:g}dB final_ber={rec.final_ber:.4e}")
    print(f"wrote {out}")


def _cmd_complexity(args) -> None:
    cfg = _cli_config(args)
    counts = _record_complexity(cfg)
    if counts is None:
        raise ConfigError("the MMSE oracle has no adaptation complexity formula")
    print("scheme,additions,multiplications")
    print(f"{cfg.scheme},{counts[0]},{counts[1]}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="rrfilt",
        description="Reduced-rank adaptive filtering BER experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment and write a per-symbol CSV")
    p_run.add_argument("--config", required=True, help="YAML experiment configuration")
    p_run.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_run.add_argument("--out", default=None,
                       help="output CSV path (default: config `out` or results.csv)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="repeat the experiment over SNR points")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--snr", required=True, help="comma-separated dB values")
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cx = sub.add_parser("complexity", help="print the scheme's operation counts")
    p_cx.add_argument("--config", required=True)
    p_cx.set_defaults(func=_cmd_complexity)

    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (ConfigError, OSError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
