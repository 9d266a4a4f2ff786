"""
Utils package: text formats and report output.
"""
