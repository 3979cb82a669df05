"""
Monte Carlo study harness: replications, metrics and estimator comparison.
"""

from seqdr.evaluation.comparison import compare_estimators, comparison_frame
from seqdr.evaluation.metrics import summarize_estimator, summary_frame, write_summary_csv
from seqdr.evaluation.study import plan_seed, replication_seed, run_replication, run_study

__all__ = [
    "compare_estimators",
    "comparison_frame",
    "plan_seed",
    "replication_seed",
    "run_replication",
    "run_study",
    "summarize_estimator",
    "summary_frame",
    "write_summary_csv",
]
