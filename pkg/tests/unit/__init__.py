"""Unit tests for algext."""
