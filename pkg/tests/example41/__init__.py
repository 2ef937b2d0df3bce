"""Tests for the counterexample chain."""
