class SqfreeError(Exception):
    pass


class DimensionMismatchError(SqfreeError):
    pass


class FieldMismatchError(SqfreeError):
    pass


class UnsupportedFieldError(SqfreeError):
    pass


class DisconnectedGraphError(SqfreeError):
    pass


class NotAFaceError(SqfreeError):
    pass


class NotSquareFreeError(SqfreeError):
    pass


class ModuleValidationError(SqfreeError):
    pass


class NotCohenMacaulayError(SqfreeError):
    pass


class PreconditionError(SqfreeError):
    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        message = f"precondition failed: {hypothesis}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class DecomposableModuleError(SqfreeError):
    pass


class DegreeOutOfRangeError(SqfreeError):
    pass


class ZeroHolonomyError(SqfreeError):
    pass


class CycleCapExceededError(SqfreeError):
    pass


class GeneralSectionError(SqfreeError):
    pass


class NoQualifyingModuleError(SqfreeError):
    pass


class InconclusiveError(SqfreeError):
    def __init__(self, reason: str, budget: int | None = None):
        self.reason = reason
        self.budget = budget
        suffix = f" after {budget} samples" if budget is not None else ""
        super().__init__(f"inconclusive: {reason}{suffix}")


class InputFormatError(SqfreeError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class UsageError(Exception):
    pass
