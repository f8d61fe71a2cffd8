"""Exceptions shared by the enumeration kernels."""


class SearchTooLarge(Exception):
    """Raised when an exhaustive lattice search exceeds its node budget."""
