class AwfsError(Exception):
    pass


class DomainMismatch(AwfsError):
    pass


class ConeMismatch(AwfsError):
    pass


class BaseMismatch(AwfsError):
    pass


class UnsupportedShape(AwfsError):
    pass


class InvalidCategory(AwfsError):
    pass


class NonCommutingSquare(AwfsError):
    pass


class InvalidStructure(AwfsError):
    pass


class InvalidAlgebra(InvalidStructure):
    pass


class NotGroupoid(AwfsError):
    pass


class ParseError(AwfsError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(f"{message}{where}")


class ValidationError(AwfsError):
    """A document item failed a law; ``law`` names it."""

    def __init__(self, law, detail=""):
        self.law = law
        super().__init__(f"{law}: {detail}" if detail else law)


class UnknownCommand(AwfsError):
    pass
