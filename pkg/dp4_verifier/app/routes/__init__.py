"""
Routes package: command-line sub-commands.
"""
