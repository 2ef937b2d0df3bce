"""avgmdp - Solve and verify Markov decision processes.

Finite-horizon, discounted, undiscounted and average-cost criteria on
countable-state models with finite action sets, together with the
vanishing-discount machinery and a reproducible counterexample separating
two boundedness assumptions on relative discounted values.
"""

__version__ = "0.1.0"
