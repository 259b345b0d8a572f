"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class GSError(Exception):
    exit_code = 1

    def __init__(self, message: str, kind: str | None = None, stage: str | None = None):
        super().__init__(message)
        self.kind = kind
        self.stage = stage

    def __str__(self) -> str:
        msg = super().__str__()
        prefix = f"[{self.stage}] " if self.stage else ""
        tag = f"{self.kind}: " if self.kind else ""
        return f"{prefix}{tag}{msg}"


class ParseError(GSError):
    exit_code = 2


class ValidationError(GSError):
    exit_code = 3


class FieldError(ValidationError):
    """Invalid field data: reducible modulus, bad automorphisms and so on."""


class GroupError(ValidationError):
    pass


class RepresentationError(ValidationError):
    pass


class ModularCharacteristicError(ValidationError):
    def __init__(self, char: int, order: int, stage: str | None = None):
        super().__init__(
            f"characteristic {char} divides the group order {order}",
            kind="modular-characteristic",
            stage=stage,
        )


class BudgetExceeded(GSError):
    exit_code = 4


class CertificateFailure(GSError):
    exit_code = 5


class BundleIOError(GSError):
    exit_code = 6
