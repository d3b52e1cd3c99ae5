class SimulationError(Exception):
    """Base class for every failure raised by the simulator."""


class ConfigurationError(SimulationError, ValueError):
    """Invalid configuration, override or sweep specification."""


class DegenerateGeometryError(SimulationError):
    """A beamforming quantity the closed forms divide by is zero."""


class DegenerateInputError(DegenerateGeometryError):
    """Input to a rank-1 construction does not have rank exactly one."""


class AllocationInfeasibleError(SimulationError):
    """No allocation of the requested kind satisfies the constraints."""


class OverJammedError(AllocationInfeasibleError):
    """Mandatory radar leakage alone pushes SINR_D below gamma_s."""


class MonitoringInfeasibleError(AllocationInfeasibleError):
    """gamma_s is unreachable even without jamming."""


class RadarInfeasibleError(AllocationInfeasibleError):
    """The power budget cannot satisfy the radar constraints."""


class OracleFailureError(SimulationError):
    """A numerical oracle failed to converge."""


class ConsistencyError(SimulationError):
    """An internal identity that must hold by construction was violated."""
