"""Exception hierarchy shared by every module.

Each error carries a short machine-readable ``code`` and an optional
``context`` dict so the command line front end can serialize it.
"""


class SSCMCError(ValueError):
    code = "error"

    def __init__(self, message, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self):
        return {"error": self.code, "message": self.message,
                "context": {k: _plain(v) for k, v in self.context.items()}}


class DomainError(SSCMCError):
    """Input outside the region where a formula is defined."""
    code = "domain"


class DivergenceError(SSCMCError):
    """Requested value is infinite (e.g. t at the horizon)."""
    code = "divergence"


class ClassificationError(SSCMCError):
    """Integration constant violates the admissibility bounds of a region."""
    code = "classification"


class WrongCaseError(SSCMCError):
    """A join routine was called with parameters belonging to another case."""
    code = "wrong_case"


class VerificationError(SSCMCError):
    code = "verification"


def _plain(v):
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)
