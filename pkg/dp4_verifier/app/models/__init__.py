"""
Models package: report models and error types.
"""
