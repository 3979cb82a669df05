# seqdr package root
"""
Sequential model doubly robust estimation of dynamic treatment effects.

Subpackages:
- core: data types, losses, solver and the cross-fitted estimator
- simulation: synthetic scenarios, ground truth and pseudo-true parameters
- evaluation: Monte Carlo studies and estimator comparison
"""

__version__ = "0.1.0"
