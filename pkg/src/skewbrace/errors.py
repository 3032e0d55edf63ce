"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class SkewBraceError(ValueError):
    """Base class for every algebraic validation failure."""


class GroupError(SkewBraceError):
    pass


class NotLatinSquare(GroupError):
    pass


class NotAssociative(GroupError):
    pass


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    pass


class OrderCapExceeded(SkewBraceError):
    pass


class BraceError(SkewBraceError):
    pass


class AddNotGroup(BraceError):
    pass


class CircNotGroup(BraceError):
    pass


class IdentityMismatch(BraceError):
    pass


class GammaNotEndomorphism(BraceError):
    def __init__(self, x: int, y: int, z: int):
        super().__init__(
            f"gamma({x}) is not additive: gamma({x})({y}*{z}) != "
            f"gamma({x})({y})*gamma({x})({z})"
        )
        self.instance = (x, y, z)


class GfeViolation(BraceError):
    def __init__(self, x: int, y: int):
        super().__init__(
            f"functional equation fails at x={x}, y={y}: "
            f"gamma(gamma({x})({y})*{x}) != gamma({y}) then gamma({x})"
        )
        self.instance = (x, y)


class NotAutomorphism(BraceError):
    def __init__(self, x: int):
        super().__init__(f"gamma({x}) is not an automorphism of the additive group")
        self.x = x


class LeftAxiomViolated(BraceError):
    pass


class ConversionSanityFailed(BraceError):
    pass


class NotWellDefined(BraceError):
    def __init__(self, op: str, x: int, x2: int, y: int):
        super().__init__(
            f"coset operation {op!r} not well defined: representatives {x} and {x2} "
            f"of one coset disagree against {y}"
        )
        self.instance = (op, x, x2, y)


class IdealClosureFailed(BraceError):
    pass


class UnknownOrder(SkewBraceError):
    pass


class TransitivityViolation(RuntimeError):
    pass


class InvarianceViolation(RuntimeError):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report


class ParseError(ValueError):
    pass
