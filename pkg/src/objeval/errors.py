"""Exception hierarchy.

Everything raised on purpose derives from ``ObjevalError`` except parse
failures, which subclass the builtin ``SyntaxError`` so callers can catch
them the usual way.  The CLI maps ``ParseError`` and ``ModelError`` to exit
status 2 and every other ``ObjevalError`` to exit status 1.
"""


class ObjevalError(Exception):
    pass


class ParseError(SyntaxError):
    def __init__(self, position, message, text=None):
        super().__init__(f"at {position}: {message}")
        self.position = position
        self.message = message
        self.text = text


class ModelError(ObjevalError):
    """Malformed model, bindings or individual file."""


# compiler

class UnknownVariable(ObjevalError):
    def __init__(self, name):
        super().__init__(f"unknown variable {name!r}")
        self.name = name


class NotOutermost(ObjevalError):
    def __init__(self, name):
        super().__init__(f"{name!r} is not the outermost environment slot")
        self.name = name


class ShapeMismatch(ObjevalError):
    pass


class UnknownBuiltin(ObjevalError):
    def __init__(self, name):
        super().__init__(f"unknown builtin {name!r}")
        self.name = name


class IllTyped(ObjevalError):
    pass


# evaluator

class EvalError(ObjevalError):
    def __init__(self, message, code=None):
        super().__init__(message)
        self.code = code


class ProjectionOnNonPair(EvalError):
    pass


class ApplyOnNonFunction(EvalError):
    pass


class UnknownPrimitive(EvalError):
    pass


class PrimitiveFailure(EvalError):
    """A primitive received an argument outside its domain."""


class PlaceholderRead(EvalError):
    """A bound-variable slot was read before substitution overwrote it."""


# variable domains

class EnumerationCapExceeded(ObjevalError):
    pass


class StageMismatch(ObjevalError):
    pass


class TypeMismatch(ObjevalError):
    pass


class ElementNotInStage(ObjevalError):
    pass


class UnboundVariable(ObjevalError):
    def __init__(self, name):
        super().__init__(f"no valuation for variable {name!r}")
        self.name = name


class NoWitness(ObjevalError):
    pass


class NotUnique(ObjevalError):
    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)
