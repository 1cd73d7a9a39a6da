"""Test suite for ank."""
