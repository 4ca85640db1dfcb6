"""Shared error types for pipeline verification failures."""


class VerificationError(RuntimeError):
    """An internal consistency check failed (a differential does not
    square to zero, the two pipelines disagree, a morphism does not
    commute with the connecting differential)."""
