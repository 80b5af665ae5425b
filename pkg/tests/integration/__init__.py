"""Integration tests for algext."""
