from typing import Optional


class SamplerError(Exception):
    """Base class for every error raised by the sampler library"""


class DegreeSequenceError(SamplerError, ValueError):
    pass


class ParseError(SamplerError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotDigraphicError(SamplerError):
    pass


class InvalidVertexError(SamplerError, ValueError):
    pass


class NotInducedCycleError(SamplerError):
    pass


class MixedAttachmentError(SamplerError):
    def __init__(self, vertex: int, out_arcs: int, in_arcs: int):
        self.vertex = vertex
        self.out_arcs = out_arcs
        self.in_arcs = in_arcs
        super().__init__(
            f"Vertex {vertex} attaches to the cycle with {out_arcs} out-arcs and "
            f"{in_arcs} in-arcs, which is none of the four class patterns"
        )


class AmbiguousAnchorError(SamplerError):
    """Slack windows matched but more than three coordinates share the degree pair"""

    def __init__(self, k: int, l: int, multiplicity: int):
        self.k = k
        self.l = l
        self.multiplicity = multiplicity
        super().__init__(
            f"Slack windows match for (k, l) = ({k}, {l}) but {multiplicity} "
            f"coordinates carry that degree pair"
        )


class AnchorAssertionError(SamplerError):
    pass


class InstanceTooSmallError(SamplerError):
    pass


class CapExceededError(SamplerError):
    pass


class ResidualInfeasibleError(SamplerError):
    pass


class ChainInvariantError(SamplerError):
    pass
