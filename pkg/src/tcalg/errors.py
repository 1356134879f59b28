"""Exception hierarchy shared by the engine and the command line."""


class TCAlgError(Exception):
    """Base class for every error raised by tcalg."""


class ParamsError(TCAlgError, ValueError):
    """Invalid (d, m, n, r) quadruple, or one violating an operation's preconditions."""


class InvalidGeneratorError(TCAlgError, ValueError):
    def __init__(self, msg, layer=None, i=None, j=None):
        super().__init__(msg)
        self.layer = layer
        self.i = i
        self.j = j


class ParamsMismatchError(TCAlgError, ValueError):
    """Two polynomials living in different algebras were combined."""


class ResourceLimitError(TCAlgError):
    """A configured size cap (word length, sweep cells, ...) was exceeded."""


class CertificateError(TCAlgError):
    """A lower-bound certificate failed: the product of kernel classes vanished."""

    def __init__(self, msg, factors=None):
        super().__init__(msg)
        self.factors = list(factors or [])


class NoPoleFormError(TCAlgError, ValueError):
    """The rational function has a pole away from t = 1 or of order above 2."""


class StabilizationError(TCAlgError):
    """First differences of a sequence did not settle within the horizon."""

    def __init__(self, msg, differences=()):
        super().__init__(msg)
        self.differences = list(differences)
