"""Tests for the dynamic-programming engine."""
