from typing import Optional


class FowlError(Exception):
    """Base class for every error raised by the toolkit"""


class PositionedError(FowlError):
    """Error that knows where in its input it happened"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


# OWL functional syntax

class OwlSyntaxError(PositionedError):
    pass


class UnsupportedSyntaxError(FowlError):
    """Input is OWL, but not in functional-style syntax"""


class UnknownConstructError(PositionedError):
    def __init__(self, construct: str, line: Optional[int] = None, column: Optional[int] = None):
        self.construct = construct
        super().__init__(f"Unknown or unsupported OWL construct '{construct}'", line, column)


class InvalidIriError(FowlError):
    pass


class PunningError(FowlError):
    def __init__(self, iri: str, kinds):
        self.iri = iri
        self.kinds = tuple(sorted(str(k) for k in kinds))
        super().__init__(f"IRI <{iri}> is used as {' and '.join(self.kinds)}; punning is not supported")


class UndeclaredEntityError(FowlError):
    def __init__(self, iri: str, kind):
        self.iri = iri
        self.kind = kind
        super().__init__(f"{kind} <{iri}> is used but never declared")


class ImportResolutionError(FowlError):
    pass


class PrefixConflictError(FowlError):
    def __init__(self, prefix: str, first: str, second: str):
        self.prefix = prefix
        super().__init__(f"Prefix '{prefix}' is bound to both <{first}> and <{second}>")


# First-order logic

class TptpSyntaxError(PositionedError):
    pass


class DuplicateUnitError(FowlError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Duplicate TPTP unit name '{name}'")


class UnsupportedRoleError(FowlError):
    def __init__(self, role: str):
        self.role = role
        super().__init__(f"Unsupported TPTP role '{role}' (only axiom and conjecture are accepted)")


class ClifSyntaxError(PositionedError):
    pass


class BeyondFolError(ClifSyntaxError):
    """CLIF input uses a feature outside the first-order fragment"""


class ArityOverloadError(FowlError):
    def __init__(self, name: str, first: int, second: int):
        self.name = name
        super().__init__(f"Predicate '{name}' is used with arity {first} and arity {second}")


class MangleCollisionError(FowlError):
    pass


# Translation and pipelines

class UnsupportedConstructError(FowlError):
    def __init__(self, construct: str, detail: str = ""):
        self.construct = construct
        message = f"Cannot translate '{construct}' to first-order logic"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class AnnotationParseError(FowlError):
    def __init__(self, subject: str, index: int, cause: Exception):
        self.subject = subject
        self.index = index
        self.cause = cause
        super().__init__(f"Annotation #{index} on <{subject}> could not be parsed: {cause}")


# Molecules

class SmilesError(PositionedError):
    pass


class UnsupportedSmilesFeature(SmilesError):
    def __init__(self, feature: str, position: Optional[int] = None):
        self.feature = feature
        super().__init__(f"Unsupported SMILES feature: {feature}", 1 if position is not None else None, position)


class WildcardError(FowlError):
    pass
