"""Sampling the concatenated tree and comparing with the exact recurrences."""
from pentaloss.montecarlo import SimConfig, run, sweep

for cfg in (SimConfig("pre", 0.3, 2, 200_000, seed=1), SimConfig("nonpre", 0.1, 2, 200_000, seed=1)):
    rep = run(cfg, jobs=2)
    print(f"{rep.config.mode:16s} p={cfg.p} N={cfg.levels}: {rep.estimate:.5f} +- {rep.stderr:.5f}"
          f"  exact {rep.analytic:.5f}  z={rep.z:+.2f}")

grid = [SimConfig("nonpre", p, 1, 100_000, seed=5) for p in (0.05, 0.1, 0.2, 0.3)]
for rep in sweep(grid):
    print(f"p={rep.config.p}: {rep.estimate:.4f} (exact {rep.analytic:.4f})")
