"""
App package for the dp4 verifier.
"""
