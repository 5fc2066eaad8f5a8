"""Exception hierarchy. Every error knows the CLI exit code it maps to."""


class PrePostError(Exception):
    exit_code = 1


# exit 2: bad input values, usage, or a scenario that does not hold together

class DimensionMismatchError(PrePostError, ValueError):
    exit_code = 2


class NotAProjectorError(PrePostError, ValueError):
    exit_code = 2


class DomainError(PrePostError, ValueError):
    exit_code = 2


class DegenerateConfigurationError(PrePostError):
    exit_code = 2

    def __init__(self, detail=""):
        message = "degenerate configuration"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class SelectionInconsistencyError(PrePostError):
    exit_code = 2


# exit 3: the scenario file itself

class ScenarioParseError(PrePostError):
    exit_code = 3

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


# exit 4: numeric guards

class AblUndefinedError(PrePostError):
    exit_code = 4


class EnumerationLimitError(PrePostError):
    exit_code = 4


class NoContradictionError(PrePostError):
    exit_code = 4

    def __init__(self, message="no contradiction exists"):
        super().__init__(message)


class ConvergenceError(PrePostError):
    exit_code = 4
