"""Exception types shared across the package."""


class VCLabError(Exception):
    """Base class for all vclab errors."""


class BadFormat(VCLabError):
    """Family document does not follow the text or JSON grammar."""


class DuplicateSet(VCLabError):
    """The same subset appears twice in a family."""


class BadElement(VCLabError):
    """An element index is outside 1..m (or a word has stray high bits)."""


class CapExceeded(VCLabError):
    """Ground set would exceed the single-word element cap."""


class BadParam(VCLabError):
    """A generator or operation parameter violates its constraints."""


class BadPair(VCLabError):
    """The distinguished element of a shattering query lies inside Y."""


class EmptyFamily(VCLabError):
    """Operation is undefined for a family with no sets."""


class NotEvenFamily(VCLabError):
    """Operation requires every member set to have even cardinality."""


class PreconditionViolated(VCLabError):
    """A documented operation precondition does not hold."""


class SearchBudgetExceeded(VCLabError):
    """A dimension search ran out of its query budget.

    ``best_value`` carries the best value found before exhaustion and
    ``bound_kind`` says how to read it: ``"lower"`` for maximising searches,
    ``"upper"`` for the twist-minimising starred search.
    """

    def __init__(self, message: str, best_value: int | None = None,
                 bound_kind: str = "lower"):
        super().__init__(message)
        self.best_value = best_value
        self.bound_kind = bound_kind


class CliqueBudgetExceeded(VCLabError):
    """The exact clique search exceeded its node budget."""


class TableMismatch(VCLabError):
    """A computed dimension table cell differs from its expected closed form."""

    def __init__(self, message: str, mismatches=None):
        super().__init__(message)
        self.mismatches = mismatches or []
