"""Tests for bandedge."""
