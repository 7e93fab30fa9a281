"""Exception types shared across the package."""


class PruneRepError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PruneRepError, ValueError):
    """Invalid value for a domain object or a formula parameter."""


class EmptySequence(DomainError):
    """A trial was started on an empty instance sequence."""


class MalformedGraph(DomainError):
    """Graph or edge-weight data violates a structural invariant."""


class MalformedInstance(DomainError):
    """Search instance violates a structural invariant."""


class BotWitness(DomainError):
    """Witness extraction was attempted on a no-solution result."""


class ConfigError(PruneRepError):
    """Experiment configuration is inconsistent or incomplete."""


class IoError(PruneRepError):
    """A file the experiment needs could not be read or written.

    The message carries the offending path.
    """


class OracleFailure(PruneRepError):
    """A domain oracle rejected an instance during a run.

    ``round_index`` is the 1-based round that failed, when known.
    """

    def __init__(self, message, round_index=None):
        super().__init__(message)
        self.round_index = round_index


class DegenerateInstance(OracleFailure):
    """The full LP violates the unique-nondegenerate-optimum assumption."""


class InfeasibleRestriction(OracleFailure):
    """A restricted LP turned out infeasible (defensive; see lp module)."""
