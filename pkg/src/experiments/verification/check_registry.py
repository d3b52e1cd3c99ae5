from typing import Callable, Dict, List, Optional

from src.models.schema.check_schema import CheckOutcome, Depth, VerificationCheck


class CheckRegistry:
    """Registry of verification checks keyed by function name."""

    def __init__(self):
        self._checks: Dict[str, VerificationCheck] = {}

    def register(self, check: VerificationCheck) -> None:
        self._checks[check.name] = check

    def get(self, name: str) -> Optional[VerificationCheck]:
        return self._checks.get(name)

    def for_depth(self, depth: Depth) -> List[VerificationCheck]:
        """Checks to run at ``depth``; full runs every check."""
        if depth == "full":
            return list(self._checks.values())
        return [c for c in self._checks.values() if c.depth == "quick"]

    def clear(self) -> None:
        self._checks.clear()


global_check_registry = CheckRegistry()


def verification_check(depth: Depth = "quick"):
    """Register a check; ``depth="full"`` keeps it out of quick runs.

    Usage:
    @verification_check(depth="quick")
    def threshold_identity(depth: str) -> CheckOutcome:
        '''Closed-form threshold equals the power-min total power.'''
    """

    def decorator(
        func: Callable[..., CheckOutcome]
    ) -> Callable[..., CheckOutcome]:
        doc = (func.__doc__ or "").strip().splitlines()
        global_check_registry.register(
            VerificationCheck(
                name=func.__name__,
                description=doc[0].strip() if doc else "",
                depth=depth,
                func=func,
            )
        )
        return func

    return decorator
