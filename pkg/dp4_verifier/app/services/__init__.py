"""
Services package: algebra, geometry, counting and the suites.
"""
