"""Channel-resolved Casimir free energies and entropies for sphere-plane and
sphere-sphere geometries in the large-distance limit."""
from .errors import ConvergenceError, DomainError, UnsupportedOrder
from .model import (
    ALL_CHANNELS,
    D_D,
    D_PC,
    PC_D,
    PC_PC,
    ChannelId,
    GeometryKind,
    Material,
    Polarization,
    Scenario,
    SpherePlane,
    SphereSphere,
    channel_weight,
    natural_length,
    to_dimensionless_temperature,
)
from .closed_form import (
    channel_f,
    channel_s,
    dimensional_outputs,
    low_temp_series,
    scenario_total,
    total_f,
    total_s,
)

__version__ = "0.1.0"
