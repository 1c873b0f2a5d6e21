class KernelError(Exception):
    """Base class for every rejected rule application or term operation."""

    kind = "KernelError"

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    def __str__(self):
        return f"{self.kind}: {self.message}" if self.message else self.kind


def _kind(name):
    return type(name, (KernelError,), {"kind": name})


NotAForall = _kind("NotAForall")
NotAComprehension = _kind("NotAComprehension")
NotFresh = _kind("NotFresh")
NotInEnv = _kind("NotInEnv")
EnvMismatch = _kind("EnvMismatch")
ShapeMismatch = _kind("ShapeMismatch")
PatternMismatch = _kind("PatternMismatch")
SameVariable = _kind("SameVariable")
NotSyntacticallyEqual = _kind("NotSyntacticallyEqual")
SideConditionViolated = _kind("SideConditionViolated")
