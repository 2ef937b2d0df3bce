"""Tests for the average-cost machinery."""
