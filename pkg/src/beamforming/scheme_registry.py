from typing import Callable, Dict, List, Optional, Sequence

from src.models.domain.allocation_domain import PowerAllocation
from src.models.domain.beamformer_domain import BeamformerSet
from src.models.domain.channel_domain import ChannelSet
from src.models.domain.combiner_domain import ReceiveCombiners
from src.models.schema.config_schema import SystemConfig
from src.models.schema.scheme_schema import AllocationPolicy, Scheme


class SchemeRegistry:
    """Registry of receive schemes and the transmit policy each one uses."""

    def __init__(self):
        self.schemes: Dict[str, Scheme] = {}

    def register_scheme(self, scheme: Scheme) -> None:
        self.schemes[scheme.name] = scheme

    def get_scheme(self, name: str) -> Optional[Scheme]:
        return self.schemes.get(name)

    def list_schemes(self) -> List[Scheme]:
        return list(self.schemes.values())

    def require(self, name: str) -> Scheme:
        """Get a scheme by name.

        Raises:
            ValueError: If the scheme is not registered.
        """
        scheme = self.get_scheme(name)
        if scheme is None:
            known = ", ".join(sorted(self.schemes))
            raise ValueError(f"Scheme '{name}' not found (known: {known})")
        return scheme

    def build_combiners(
        self,
        name: str,
        bf_all: Sequence[BeamformerSet],
        channels: ChannelSet,
        alloc: PowerAllocation,
        cfg: SystemConfig,
    ) -> ReceiveCombiners:
        """Run the combiner builder of a registered scheme."""
        return self.require(name).combiner(bf_all, channels, alloc, cfg)


global_scheme_registry = SchemeRegistry()


def scheme(name: str, allocation: AllocationPolicy = "algorithm1"):
    """Register a combiner builder under ``name``.

    The description is the first docstring line of the decorated function.

    Usage:
    @scheme("MRC")
    def mrc(bf_all, channels, alloc, cfg) -> ReceiveCombiners:
        '''Matched filters on both receive chains.'''
    """

    def decorator(func: Callable) -> Callable:
        doc = (func.__doc__ or "").strip().splitlines()
        global_scheme_registry.register_scheme(
            Scheme(
                name=name,
                description=doc[0].strip() if doc else "",
                combiner=func,
                allocation=allocation,
            )
        )
        return func

    return decorator
