"""Test suite for avgmdp."""
