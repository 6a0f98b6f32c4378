class ToolkitError(Exception):
    "Base class for every error the toolkit raises on bad input or broken preconditions"


class GraphError(ToolkitError):
    pass


class Graph6Error(GraphError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class CoverError(ToolkitError):
    pass


class NotCriticalError(ToolkitError):
    pass


class SpectralError(ToolkitError):
    pass


class ConvergenceError(SpectralError):
    pass


class FamilyError(ToolkitError):
    pass


class LawDomainError(ToolkitError):
    pass


class EnumerationError(ToolkitError):
    pass


class CorpusError(ToolkitError):
    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class ConfigError(ToolkitError):
    pass
