"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class EmptyGrammar(EngineError):
    """A grammar (or grammar file) contained no patterns."""


class WrongOrigin(EngineError):
    """A pattern or alignment was supplied with the wrong input/stored role."""


class TwoNewRows(EngineError):
    """Both unification parents carry an input row."""


class OrderViolation(EngineError):
    """A hit set would force some row's symbols out of order."""


class NameConflict(EngineError):
    """A merged column would hold two differently named symbols."""


class DanglingParent(EngineError):
    """An audit node referenced a parent id that was never recorded."""


class UnknownNode(EngineError):
    """An audit trail lookup used an id that does not exist."""


class TrailFull(EngineError):
    """The audit trail reached its node cap; the event is recorded on the trail."""


class WidthExceeded(EngineError):
    """Rendering cannot place the symbols within the requested page width."""
