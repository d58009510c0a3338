"""Exception hierarchy. Every structured failure raises a subclass of
BirZetaError so the CLI can map them to exit codes uniformly."""


class BirZetaError(Exception):
    """Base class for all engine errors."""


class UnknownSymbol(BirZetaError):
    """A class symbol has no image under the requested specialization."""


class NegativeExponent(BirZetaError):
    """phi evaluation applied outside the nonnegative-exponent subring."""


class NonScalarLabel(BirZetaError):
    """phi evaluation applied to an element with a non-unit class label."""


class DivergentTerm(BirZetaError):
    """T -> infinity limit of a term with an unabsorbed positive T power."""


class NegativeOrder(BirZetaError):
    """Series expansion produced a negative T power."""


class MalformedComplex(BirZetaError):
    """A weighted dual complex violates one of its invariants."""


class MissingOpenClass(BirZetaError):
    """Motivic evaluation needs open_cls on every stratum."""


class MissingChi(BirZetaError):
    """Topological evaluation needs open_chi on every stratum."""


class NoSuchComponent(BirZetaError):
    """Stellar subdivision aimed at a cell component that does not exist."""


class AmbiguousIncidence(BirZetaError):
    """Component-level containment cannot be resolved without face data."""


class BadDimension(BirZetaError):
    """Surface-only operation applied to a complex with n != 2."""


class ValidationFailure(BirZetaError):
    """A curve dual graph violates the numerical-data relations."""


class EverythingContracted(BirZetaError):
    """Twig contraction left no vertices."""


class UnsupportedConfiguration(BirZetaError):
    """A residue case outside the proof taxonomy; raised, never guessed."""


class ComparisonFailure(BirZetaError):
    """Topological/birational pole comparison found a mismatch."""


class DegenerateArrangement(BirZetaError):
    """A hyperplane arrangement lists the same hyperplane twice."""


class BadParameters(BirZetaError):
    """Example generator called with out-of-range parameters."""


class VerificationError(BirZetaError):
    """An identity the engine asserts internally failed to hold."""
