"""Exception types shared across the package."""


class WallfluxError(Exception):
    """Base class for all errors raised by this package."""


class NonPositiveDensity(WallfluxError):
    """Density is zero or negative."""


class NonPositivePressure(WallfluxError):
    """Pressure derived from the state is zero or negative."""


class NonUnitNormal(WallfluxError):
    """Supplied normal vector does not have unit length."""


class GammaOutOfRange(WallfluxError):
    """Adiabatic coefficient outside the supported open interval (1, 3)."""


class NonzeroMeanNormalVelocity(WallfluxError):
    """Mean flow has a normal component at a wall, which the closed forms forbid."""


class VacuumLimitExceeded(WallfluxError):
    """Normal Mach number at or below the vacuum limit of the rarefaction branch."""


class VacuumGenerated(WallfluxError):
    """States pull apart strongly enough that the exact solution contains vacuum."""


class NoConvergence(WallfluxError):
    """Iterative solver exhausted its iteration budget."""


class NotAMirrorPair(WallfluxError):
    """Operation requires a mirror (reflected) state pair but got a general one."""


class InvalidState(WallfluxError):
    """A nodal state with non-positive density or pressure, or non-finite values."""


class InvalidRange(WallfluxError):
    """Malformed sweep range."""


class ConfigParseError(WallfluxError):
    """Simulation config file missing or malformed."""


class BlowUp(WallfluxError):
    """Simulation produced an invalid state.

    Carries the failure time, the element/node location, and the entropy
    budget accumulated up to the failed step.
    """

    def __init__(self, message, time=None, element=None, node=None, budget=None):
        super().__init__(message)
        self.time = time
        self.element = element
        self.node = node
        self.budget = budget
