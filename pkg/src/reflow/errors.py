class ReflowError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(ReflowError, ValueError):
    """A precondition on the arguments does not hold."""


class DecodeError(InvalidInput):
    """Bytes or JSON that do not decode to a valid protocol object."""


class ProofError(ReflowError):
    """A zero-knowledge proof or credential did not verify."""


class DuplicateSignature(ReflowError):
    """The signature fingerprint is already present in the seal."""


class SealClosed(ReflowError):
    """The seal is closed and no longer accepts signatures."""


class VerificationFailed(ReflowError):
    """A seal or passport did not verify where validity was required."""
