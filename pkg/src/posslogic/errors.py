from __future__ import annotations


class PossLogicError(Exception):
    pass


class SignatureError(PossLogicError):
    """Unassigned atom, arity clash, or a variable where only ground terms fit."""


class ClausalFormError(PossLogicError):
    pass


class BudgetExceeded(PossLogicError):
    pass


class ParseError(PossLogicError):
    def __init__(self, line: int, column: int, message: str, token: str = ""):
        self.line = line
        self.column = column
        self.message = message
        self.token = token
        where = f"line {line}, column {column}"
        if token:
            super().__init__(f"{where}: {message} (at {token!r})")
        else:
            super().__init__(f"{where}: {message}")
