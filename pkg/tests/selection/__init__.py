"""Tests for parametric minimization and selectors."""
