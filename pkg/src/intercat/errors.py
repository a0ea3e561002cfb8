"""Exception types shared across the package."""


class IntercatError(Exception):
    """Base class for all errors raised by intercat."""


class DomainMismatch(IntercatError):
    """Two maps were combined whose domains/codomains do not line up."""


class ShapeMismatch(IntercatError):
    """Input diagram does not have the shape an operation requires."""


class ValidationError(IntercatError):
    """A structure failed its law suite; message names the first violation."""


class NotParallel(ShapeMismatch):
    """Functors expected to share domain and codomain do not."""


class ObjectsDisagree(ShapeMismatch):
    """A parallel pair was required to agree on objects but does not."""


class NotParallel2Cells(ShapeMismatch):
    """Natural transformations expected to share source and target functors."""


class DomainNotDiscrete(ShapeMismatch):
    """An operation requires functors out of a discrete category."""


class NotSurjective(ShapeMismatch):
    """A candidate quotient map is not surjective."""


class PreconditionViolated(IntercatError):
    """A checked precondition of a verification operation failed."""


class NotCoequalising(PreconditionViolated):
    """The candidate quotient map does not even coequalise the pair."""


class NotCoequifying(PreconditionViolated):
    """The candidate functor does not equalise the two 2-cells."""


class InvalidCocone(PreconditionViolated):
    """The supplied cocone data is not a valid cocomma cocone."""


class InexactInput(PreconditionViolated):
    """An oracle was handed a truncated structure where an exact one is needed."""


class CyclicGraph(IntercatError):
    """A graph operation that needs acyclicity was given a cyclic graph."""


class ParseError(IntercatError):
    """A document file is malformed; message carries position information."""
