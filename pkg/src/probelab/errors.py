"""Exception types shared across the package."""


class ProbeLabError(Exception):
    """Base class for all probelab errors."""


class ValueTooWide(ProbeLabError):
    """A value does not fit in a cell of the configured width."""


class NoOpenFrame(ProbeLabError):
    """pop_frame (or frame inspection) called with no open change-log frame."""


class WidthTooSmall(ProbeLabError):
    """The cell width cannot accommodate the values the structure must store."""


class NodeOutOfBounds(ProbeLabError):
    """A tree node reference lies outside the tree."""


class IndexOutOfBounds(ProbeLabError):
    """A layer-node index lies outside the butterfly's layer range."""


class InvalidEdge(ProbeLabError):
    """An edge violates the butterfly adjacency rule or its layer range."""


class InstanceParseError(ProbeLabError):
    """An instance file is malformed or contains invalid edges."""


class InvalidParams(ProbeLabError):
    """Generation parameters are out of range."""


class VerificationRejected(ProbeLabError):
    """A verifier rejected the probe set supplied for a query.

    Never raised when the built-in prover selects the probes; it exists for
    adversarial harnesses that feed hand-picked probe sets.
    """


class VerificationFailure(ProbeLabError):
    """An end-to-end check disagreed with its brute-force oracle."""
