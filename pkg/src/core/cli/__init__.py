"""
qnetctl CLI - Command Line Interface
"""
