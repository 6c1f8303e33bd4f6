class ParameterError(ValueError):
    """Key or operation parameters are infeasible or inconsistent."""


class MalformedCiphertext(ValueError):
    """Ciphertext cannot have been produced by the scheme's encryption."""
