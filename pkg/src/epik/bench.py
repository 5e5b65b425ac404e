"""Timing harness: linear cost law and per-hop latency model.

Times are medians over repeated trials, in microseconds.  ``chain_sim``
does not sleep; it adds the injected per-hop latency arithmetically to the
measured crypto time.

By default the deterministic isogeny chain is memoized, so a timed call
covers the size-dependent work (key hashing, keystream, masking).  With
``cold=True`` the caches are cleared before every timed call and each
encrypt or decrypt also walks its chain and recomputes ``j``.
"""

from __future__ import annotations

import csv
import gc
import io
import random
import statistics
import time
import warnings
from dataclasses import dataclass

import numpy as np

from .kem import clear_caches, keygen, pke_decrypt, pke_encrypt
from .keys import ParamSet, get_preset

MIN_TRIALS = 11
DEFAULT_SIZES = tuple(range(16, 2001, 16 * 8))
CSV_HEADER = ("size_bytes", "encrypt_us", "decrypt_us", "trials")


@dataclass(frozen=True)
class BenchSample:
    size: int
    encrypt_us: float
    decrypt_us: float
    trials: int


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float


@dataclass(frozen=True)
class BenchReport:
    encrypt: LinearFit
    decrypt: LinearFit
    dec_to_enc_ratio: float
    samples: tuple[BenchSample, ...]


@dataclass(frozen=True)
class ChainRow:
    size: int
    total_ms: float
    latency_ms: float
    compute_ms: float

    @property
    def compute_share(self) -> float:
        return self.compute_ms / self.total_ms if self.total_ms else 0.0


def _time_us(fn, repeat: int, cold: bool = False) -> float:
    total = 0
    for _ in range(repeat):
        if cold:
            clear_caches()
        t0 = time.perf_counter_ns()
        fn()
        total += time.perf_counter_ns() - t0
    return total / 1000 / repeat


def run_sweep(sizes=DEFAULT_SIZES, trials: int = MIN_TRIALS, params: ParamSet | None = None,
              seed: int = 0, repeat: int = 1, cold: bool = False) -> list[BenchSample]:
    """Median encrypt/decrypt time per message size.

    Trials are interleaved round-robin over the sizes so that slow drift in
    machine speed spreads evenly instead of tilting the fit.
    """
    if trials < MIN_TRIALS:
        raise ValueError(f"need at least {MIN_TRIALS} trials")
    if repeat < 1:
        raise ValueError("repeat must be >= 1")
    sizes = list(sizes)
    params = params or get_preset("iot")
    rng = random.Random(seed)
    pk, sk = keygen(params, rng)
    # warm the chain caches so every timed call does the same work
    pke_decrypt(sk, pke_encrypt(pk, b"warm", rng))
    msgs = [rng.randbytes(n) for n in sizes]
    cts = [pke_encrypt(pk, m, rng) for m in msgs]
    enc: list[list[float]] = [[] for _ in sizes]
    dec: list[list[float]] = [[] for _ in sizes]
    enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(trials):
            for i, (m, ct) in enumerate(zip(msgs, cts)):
                enc[i].append(_time_us(lambda: pke_encrypt(pk, m, rng), repeat, cold))
                dec[i].append(_time_us(lambda: pke_decrypt(sk, ct), repeat, cold))
    finally:
        if enabled:
            gc.enable()
    out = [BenchSample(n, statistics.median(e), statistics.median(d), trials)
           for n, e, d in zip(sizes, enc, dec)]
    for a, b in zip(out, out[1:]):
        if b.size > a.size and (b.encrypt_us < a.encrypt_us or b.decrypt_us < a.decrypt_us):
            warnings.warn(f"median time dropped between {a.size} and {b.size} bytes",
                          RuntimeWarning, stacklevel=2)
            break
    return out


def _ols(x: np.ndarray, y: np.ndarray) -> LinearFit:
    design = np.column_stack([x, np.ones_like(x)])
    (m, c), *_ = np.linalg.lstsq(design, y, rcond=None)
    ss_res = float(np.sum((y - (m * x + c)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return LinearFit(float(m), float(c), r2)


def fit_linear(samples) -> BenchReport:
    """Least-squares ``T(S) = m S + c`` for encrypt and decrypt."""
    samples = tuple(samples)
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    x = np.array([s.size for s in samples], dtype=float)
    enc = np.array([s.encrypt_us for s in samples], dtype=float)
    dec = np.array([s.decrypt_us for s in samples], dtype=float)
    ratio = float(dec.sum() / enc.sum()) if enc.sum() else float("nan")
    return BenchReport(_ols(x, enc), _ols(x, dec), ratio, samples)


def chain_sim(latency_ms: float, sizes, nodes: int = 4, trials: int = MIN_TRIALS,
              params: ParamSet | None = None, seed: int = 0, repeat: int = 1,
              cold: bool = False) -> list[ChainRow]:
    """A message relayed through ``nodes`` boards, each decrypting and re-encrypting.

    Every hop pays ``latency_ms`` plus one encrypt and one decrypt.
    """
    if nodes < 1:
        raise ValueError("need at least one node")
    if latency_ms < 0:
        raise ValueError("latency must be non-negative")
    rows = []
    for s in run_sweep(sizes, trials, params, seed, repeat, cold):
        compute = nodes * (s.encrypt_us + s.decrypt_us) / 1000
        latency = nodes * latency_ms
        rows.append(ChainRow(s.size, latency + compute, latency, compute))
    return rows


def to_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in report.samples:
        w.writerow([s.size, f"{s.encrypt_us:.3f}", f"{s.decrypt_us:.3f}", s.trials])
    for name, fit in (("encrypt", report.encrypt), ("decrypt", report.decrypt)):
        buf.write(f"# {name}: slope_us_per_byte={fit.slope:.6g} "
                  f"intercept_us={fit.intercept:.6g} r_squared={fit.r_squared:.6f}\n")
    buf.write(f"# dec_to_enc_ratio={report.dec_to_enc_ratio:.4f}\n")
    return buf.getvalue()


def from_csv(text: str) -> list[BenchSample]:
    rows = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    reader = csv.reader(rows)
    if tuple(next(reader)) != CSV_HEADER:
        raise ValueError("unexpected CSV header")
    return [BenchSample(int(a), float(b), float(c), int(d)) for a, b, c, d in reader]
