"""Shared Hypothesis settings tiers.

Tiers:
- STANDARD_SETTINGS: 100 examples, for cheap algebraic laws.
- QUICK_SETTINGS: 20 examples, for fault injection that rebuilds and rechecks
  a structure per example.
"""
from hypothesis import HealthCheck, settings

STANDARD_SETTINGS = settings(max_examples=100, deadline=None)

QUICK_SETTINGS = settings(
    max_examples=20,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
