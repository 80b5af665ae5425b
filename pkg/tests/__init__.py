"""Tests for algext."""
