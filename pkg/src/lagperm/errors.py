"""Exception types raised across the package."""


class LagpermError(Exception):
    """Base class for every error raised by lagperm."""


class ParseError(LagpermError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NotAPermutation(LagpermError, ValueError):
    pass


class IndexOutOfRange(LagpermError, IndexError):
    pass


class InvalidFamilyParams(LagpermError, ValueError):
    pass


class PathBelowAxis(LagpermError, ValueError):
    def __init__(self, index: int):
        super().__init__(f"path goes below the axis at step {index}")
        self.index = index


class PathNotClosed(LagpermError, ValueError):
    def __init__(self, final_height: int):
        super().__init__(f"path ends at height {final_height}, not 0")
        self.final_height = final_height


class MuOutOfRange(LagpermError, ValueError):
    def __init__(self, index: int, value: int, height: int):
        super().__init__(f"mu_{index} = {value} is outside [0, {height}]")
        self.index = index
        self.value = value
        self.height = height


class InternalInconsistency(LagpermError, RuntimeError):
    """A proven invariant failed; always a bug in this package."""


class NotInImage(LagpermError, ValueError):
    pass


class NotGammaExpandable(LagpermError, ValueError):
    pass


class SizeTooLarge(LagpermError, ValueError):
    pass


class UnknownCheck(LagpermError, KeyError):
    def __str__(self) -> str:
        return f"unknown check {self.args[0]!r}"
