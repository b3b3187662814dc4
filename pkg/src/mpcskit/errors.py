"""Exception hierarchy shared by all mpcskit modules."""


class MpcsError(Exception):
    """Base class for every error raised by mpcskit."""


class GraphError(MpcsError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class LabelOutOfRange(GraphError):
    pass


class DisconnectedGraph(GraphError):
    pass


class NotATree(GraphError):
    pass


class NotATreeLaplacian(GraphError):
    pass


class SpectralError(MpcsError):
    pass


class ConvergenceFailure(SpectralError):
    pass


class NotAnEigenvalue(SpectralError):
    pass


class WitnessSamplingFailed(SpectralError):
    pass


class SupportSearchOverflow(MpcsError):
    """Flat enumeration exceeded its node budget; completeness not certified."""


class PreconditionUnmet(MpcsError):
    """A recognizer was called outside the hypotheses it is valid under."""


class CandidateNotTransversal(MpcsError):
    pass


class CandidateNotControllable(MpcsError):
    pass


class ParseError(MpcsError):
    pass
