"""Monte Carlo experiments: baseline, sweeps, trend and scaling checks."""
