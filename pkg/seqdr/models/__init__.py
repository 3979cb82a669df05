"""
Document models and Pydantic schemas.

JSON contracts for estimate reports, simulation scenarios, ground truth,
study configurations and study results.
"""
