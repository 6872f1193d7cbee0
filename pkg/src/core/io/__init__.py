"""File readers for rate lists, SKR logs, downtime masks and assignments."""

from src.core.io.reader import iter_trace_records, read_assignment, read_masks, read_skr_values

__all__ = ["iter_trace_records", "read_assignment", "read_masks", "read_skr_values"]
