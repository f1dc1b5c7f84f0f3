"""
Zeno Thermal
Zeno timescales of a two-level atom in a thermal magnetic field, from weak
measurement and from the thermal master equation, with brute-force oracles
"""

__version__ = '1.0.0'
__author__ = 'Zeno Thermal Team'

from .errors import ConfigError, NumericalError, ZenoError
from .qm_core import DensityMatrix, Operator2, PureState, SystemParams
from .thermal_field import ThermalFactorMode, ThermalFieldParams, zeno_time_thermal
from .weak_measurement import weak_zeno_time
from .zeno_dynamics import ZenoEstimate, zeno_time_geometric, zeno_time_variance

__all__ = [
    'ConfigError', 'NumericalError', 'ZenoError',
    'DensityMatrix', 'Operator2', 'PureState', 'SystemParams',
    'ThermalFactorMode', 'ThermalFieldParams', 'zeno_time_thermal',
    'weak_zeno_time',
    'ZenoEstimate', 'zeno_time_geometric', 'zeno_time_variance',
]
