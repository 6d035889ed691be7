"""Exception hierarchy shared by all toolkit modules.

Every error carries a short machine-readable ``code`` that the CLI maps to
its JSON diagnostic output.
"""


class ToricError(Exception):
    """Base class for all toolkit errors."""

    code = "error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.code)
        self.detail = detail or self.code


class InvalidArgumentError(ToricError):
    code = "invalid-argument"


class InvalidPolytopeError(ToricError):
    code = "invalid-polytope"


class InvalidConeError(ToricError):
    code = "invalid-cone"


class NotAReebVectorError(ToricError):
    code = "not-a-reeb-vector"


class SymbolicReebUndecidableError(ToricError):
    code = "symbolic-reeb-undecidable"


class InvalidKaehlerClassError(ToricError):
    code = "invalid-kahler-class"


class InconsistentInputError(ToricError):
    code = "inconsistent-input"


class GuaranteeNotApplicableError(ToricError):
    code = "guarantee-not-applicable"


class OutOfDomainError(ToricError):
    code = "out-of-domain"


class NotConvexHereError(ToricError):
    code = "not-convex-here"


class NotAProductError(ToricError):
    code = "not-a-product"


class InvalidPartitionError(ToricError):
    code = "invalid-partition"


class InternalInconsistencyError(ToricError):
    code = "internal-inconsistency"
