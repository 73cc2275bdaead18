from __future__ import annotations


class GrassTCError(Exception):
    """Base class for engine errors."""


class UsageError(GrassTCError, ValueError):
    """Bad arguments: mismatched variable spaces, out-of-range parameters."""


class InfeasibleError(GrassTCError):
    """A configured resource cap would be exceeded."""
