"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """Input violates an operation's precondition."""


class ResourceLimitError(ValueError):
    """Requested problem size exceeds what the dense engines support."""


class PostselectionError(ArithmeticError):
    """Postselection probability is too small to renormalize."""


class GenerationError(RuntimeError):
    """Random graph generation exhausted its rejection budget."""


class UnsupportedChannelError(ValueError):
    """Channel cannot be unraveled into Pauli trajectories."""
