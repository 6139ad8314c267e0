"""Exception hierarchy. Every error carries a short machine-readable code."""

from __future__ import annotations


class HermGenusError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ParameterError(HermGenusError, ValueError):
    code = "invalid-parameters"


class LevelError(HermGenusError, ValueError):
    code = "wrong-level"


class CapacityError(HermGenusError):
    code = "cap-exceeded"


class SingularMatrixError(HermGenusError, ValueError):
    code = "singular-matrix"


class NotUnitaryError(HermGenusError, ValueError):
    code = "non-unitary"

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index

    def to_dict(self) -> dict:
        d = super().to_dict()
        if self.index is not None:
            d["index"] = self.index
        return d


class HypothesisError(HermGenusError, ValueError):
    code = "hypothesis-violation"


class ConstantNotFoundError(HermGenusError):
    code = "field-constant-not-found"


class NotInMqError(HermGenusError, ValueError):
    code = "not-in-Mq"


class NotClosedError(HermGenusError, ValueError):
    code = "not-closed"


class IntegralityError(HermGenusError, ArithmeticError):
    code = "non-integral-genus"


class WildElementError(HermGenusError, ValueError):
    code = "wild-element"


class InputFormatError(HermGenusError, ValueError):
    code = "parse-error"
