"""
Exception hierarchy for popcheck.

Every error raised on purpose by the package derives from PopcheckError so
that the command-line front end can map it to exit code 1.
"""


class PopcheckError(Exception):
    """Base class for all popcheck errors."""


class DomainError(PopcheckError, ValueError):
    """An argument lies outside a declared domain, range or precondition."""


class ConvergenceError(PopcheckError, ArithmeticError):
    """A series or iteration hit its cap before converging."""


class RegistryError(PopcheckError, KeyError):
    """Unknown registry name or malformed ``name:param`` syntax."""

    def __str__(self) -> str:
        # KeyError quotes its message; keep it readable on the command line
        return str(self.args[0]) if self.args else ""


class SearchError(PopcheckError, RuntimeError):
    """A counterexample search could not evaluate its objective anywhere."""
