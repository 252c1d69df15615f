"""Exception hierarchy shared by every module in the package."""


class SinglePeakError(Exception):
    """Base class for all errors raised by singlepeak."""


class DomainError(SinglePeakError, ValueError):
    """An argument lies outside the domain of the operation."""


class SizeError(DomainError):
    """A request would enumerate more objects than the configured cap allows."""

    def __init__(self, requested: int, cap: int):
        self.requested = requested
        self.cap = cap
        super().__init__(
            f"request for {requested} votes exceeds the enumeration cap of {cap} "
            "(pass a larger cap to override)"
        )


class SocFormatError(SinglePeakError, ValueError):
    """A SOC document could not be parsed."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
