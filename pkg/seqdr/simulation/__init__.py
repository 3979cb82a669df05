"""
Synthetic data generators with known truth and controlled misspecification.
"""

from seqdr.simulation.generator import GroundTruth, generate, ground_truth, sample_dataset
from seqdr.simulation.mechanisms import TrueMechanisms, default_coefficients
from seqdr.simulation.oracle import oracle_eta

__all__ = [
    "GroundTruth",
    "TrueMechanisms",
    "default_coefficients",
    "generate",
    "ground_truth",
    "oracle_eta",
    "sample_dataset",
]
