"""Define noncanon constants."""
import logging

LOGGER = logging.getLogger(__package__)

# Truncation of free constructions.
DEFAULT_MAX_WORD_LEN = 4
DEFAULT_MAX_FAMILY_LEN = 3

# Largest number of candidate component families an exhaustive search may visit.
DEFAULT_SEARCH_BOUND = 10**6

# Largest k accepted for the user-facing `finset:k` fixture.
FINSET_MAX = 4

REPORT_SCHEMA = 1

ENV_THREADS = "NONCANON_THREADS"
