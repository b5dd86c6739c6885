#!/usr/bin/env python3
"""Run the built-in verification battery and print its report.

Each check ties a numerical experiment to an identity of the calculus:
exact grid inversion, the Gramian isometry of the stochastic integral,
filter composition and inversion round trips, the time/frequency
equivalence of FIR filtering, decomposition orthogonality, hfPCA
optimality, increment-path correspondences and bitwise reproducibility.

The same battery backs ``opspectra --config cfg.json`` with
``{"command": "verify"}``.
"""

from opspectra.verify import emit_report, human_summary, run_battery

results = run_battery(seed=12345)
print(human_summary(results))

rows = emit_report(results)
worst = max(rows, key=lambda r: r["metric"] / (r["tolerance"] or 1.0))
print("\nlargest residual relative to tolerance:")
print(f"  {worst['check_id']}: metric={worst['metric']:.3e}"
      f" tolerance={worst['tolerance']:.3e}")
