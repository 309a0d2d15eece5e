"""Exception types shared across the package."""


class CapExceededError(RuntimeError):
    """A field size or extension degree cap was hit.

    Parameters
    ----------
    message : str
        Description of the cap that was hit.
    degree : int, optional
        The extension degree over `F_q` reached when the cap was hit.
    """

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class VerificationError(RuntimeError):
    """An internal consistency check failed.

    Raised when a computation that must succeed by construction does not, for
    example an exhausted relation search or two independent methods that
    disagree.
    """
