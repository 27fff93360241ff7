"""Timing comparison of the pure-Python and compiled arithmetic cores.

Each workload runs in a fresh subprocess so QMETRIC_BACKEND is honoured
at import time.  The compiled rows are skipped (with a note) when the
extension is not built.

    python3 benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys

_WORKLOADS = {
    "derive-order-4": """
from qmetric.perturbation import MetricParams, derive_metric_series
derive_metric_series(MetricParams.formal(4))
""",
    "derive-order-5": """
from qmetric.perturbation import MetricParams, derive_metric_series
derive_metric_series(MetricParams.formal(5))
""",
    "commutator-power": """
from qmetric.algebra import commutator, h1
from qmetric.perturbation import MetricParams, derive_metric_series
q1 = derive_metric_series(MetricParams.formal(1)).q(1)
commutator(h1(), q1, 6)
""",
    "verify-battery": """
from qmetric.verify import run_verification
run_verification(workers=1)
""",
}

_TIMER = """
import time
t0 = time.perf_counter()
{body}
print(time.perf_counter() - t0)
"""


def _run(backend: str, body: str) -> float | None:
    env = dict(os.environ, QMETRIC_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", _TIMER.format(body=body)],
                          capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        return None
    return float(proc.stdout.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3,
                    help="best-of-N per cell (default 3)")
    args = ap.parse_args()

    print(f"{'workload':<20} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, body in _WORKLOADS.items():
        cells = {}
        for backend in ("python", "compiled"):
            times = [_run(backend, body) for _ in range(args.repeat)]
            times = [t for t in times if t is not None]
            cells[backend] = min(times) if times else None
        py, cc = cells["python"], cells["compiled"]
        pys = f"{py:.4f}s" if py is not None else "error"
        if cc is None:
            print(f"{name:<20} {pys:>10} {'missing':>10} {'-':>8}")
        else:
            ratio = f"{py / cc:.2f}x" if py else "-"
            print(f"{name:<20} {pys:>10} {cc:>9.4f}s {ratio:>8}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
