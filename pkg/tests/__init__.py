"""Tests for noncanon."""
