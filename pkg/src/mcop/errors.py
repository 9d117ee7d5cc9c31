"""Exception hierarchy.

Input problems (malformed posets, bad decompositions) derive from
:class:`InputError`; the CLI maps those to exit code 2.
"""


class McopError(Exception):
    pass


class InputError(McopError):
    pass


class CycleError(InputError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("relation has a directed cycle: " + " -> ".join(map(str, self.cycle)))


class UnknownElement(InputError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"unknown element {element!r}")


class InvalidMarking(InputError):
    pass


class NotAPartition(InputError):
    pass


class NotAdmissible(InputError):
    pass


class EmptyMarking(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotInDomain(InputError):
    pass


class NotInPolytope(NotInDomain):
    pass


class InvalidOrderPoint(NotInDomain):
    pass


class Unbounded(McopError):
    pass


class EmptyPolytope(McopError):
    pass


class RegularityRequired(McopError):
    pass


class NotRegularizable(McopError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(f"no retraction applies; remaining violations: {self.violations}")


class PreconditionViolated(McopError):
    pass


class IsStarElement(PreconditionViolated):
    pass


class NotAdmissibleAfterMove(PreconditionViolated):
    pass


class SignatureMismatch(McopError):
    pass


class NoPathFound(McopError):
    pass


class NotLinearlyOrdered(McopError):
    pass
