class InputError(ValueError):
    """Bad or inconsistent input: wrong field, unparsable text, failed precondition."""


class GuardError(RuntimeError):
    """An exhaustive computation refused to run because it exceeds its size guard."""
