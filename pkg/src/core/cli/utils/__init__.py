"""qnetctl CLI Utilities."""
