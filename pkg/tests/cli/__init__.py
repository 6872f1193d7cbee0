"""CLI tests for qnetctl."""
