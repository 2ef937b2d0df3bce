"""Tests for the core model layer."""
