"""Exception types shared across the package."""


class EscBiasError(Exception):
    """Base class for every error this package raises deliberately."""


class MissingFile(EscBiasError):
    """A required input file does not exist."""


class MalformedFile(EscBiasError):
    """An input file exists but its structure is not the expected matrix layout."""


class SelfVote(EscBiasError):
    """A score table contains a non-zero diagonal entry."""


class UnattainableScore(EscBiasError):
    """A stored score cannot be produced by that year's voting scheme."""


class UnknownCountry(EscBiasError):
    """A country name does not appear in the region registry."""


class MissingYear(EscBiasError):
    """A queried year is not present in the dataset."""


class UnsupportedYear(EscBiasError):
    """The year is outside 1957-2017 and has no voting scheme."""


class InvalidCandidateCount(EscBiasError):
    """Candidate count must be a positive integer."""


class EmptyInput(EscBiasError):
    """An operation that needs at least one element received none."""


class InvalidAlpha(EscBiasError):
    """Significance level must lie strictly between 0 and 1."""


class IneligiblePair(EscBiasError):
    """A country pair is not present for every year of the window."""


class InvalidSpec(EscBiasError):
    """An aggregation specification violates its own constraints."""


class WrongMode(EscBiasError):
    """An operation requires networks built in a different aggregation mode."""


class IoFailure(EscBiasError):
    """Writing an output file failed."""
