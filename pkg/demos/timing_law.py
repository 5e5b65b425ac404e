"""
Linear timing law and latency dominance
=======================================

Encryption time grows linearly with the message size.  In a relay chain
the per-hop network latency dwarfs the computation.
"""

import warnings

from epik.bench import chain_sim, fit_linear, run_sweep
from epik.keys import get_preset

warnings.simplefilter("ignore", RuntimeWarning)

# medians over 11 interleaved trials per size
samples = run_sweep(range(16, 2001, 128), trials=11)
report = fit_linear(samples)
for name, fit in (("encrypt", report.encrypt), ("decrypt", report.decrypt)):
    print(f"{name}: {fit.slope:.4f} us/byte + {fit.intercept:.1f} us, R^2 = {fit.r_squared:.4f}")

# four boards, 90 ms per hop; cold=True makes every hop walk its chain
for row in chain_sim(90, [16, 500, 2000], params=get_preset("iot"), cold=True):
    print(f"{row.size:5d} bytes: total {row.total_ms:.1f} ms, compute share {row.compute_share:.3f}")
