"""
Run Config Module - Resolves defaults, config files and flags into a validated RunConfig
"""
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from dotenv import dotenv_values

from config import COMMAND_DEFAULTS, KEY_TYPES, NOT_ECHOED

from .errors import ConfigError
from .qm_core import PureState, SystemParams, basis_state, x_polarized_state
from .tables import GridSpec, format_number
from .thermal_field import ThermalFactorMode, ThermalFieldParams

logger = logging.getLogger(__name__)

AUTO = 'auto'
_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}


def parse_value(key: str, raw: Any) -> Any:
    """
    Convert a raw config value to the type registered for key

    Args:
        key: Config key
        raw: String from a file or flag, or an already typed default

    Returns:
        Typed value; 'auto' passes through for *_or_auto keys
    """
    kind = KEY_TYPES.get(key)
    if kind is None:
        raise ConfigError(key, "a known configuration key")
    text = str(raw).strip() if not isinstance(raw, (bool, int, float)) else raw

    if kind.endswith('_or_auto') and isinstance(text, str) and text.lower() == AUTO:
        return AUTO
    try:
        if kind.startswith('float'):
            value = float(text)
            if not math.isfinite(value):
                raise ValueError
            return value
        if kind.startswith('int'):
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"a finite {kind.split('_')[0]}", raw) from None
    if kind == 'bool':
        if isinstance(text, bool):
            return text
        lowered = str(text).lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ConfigError(key, "a boolean (true/false)", raw)
    if kind.startswith('choice:'):
        options = kind.split(':', 1)[1].split(',')
        if str(text) not in options:
            raise ConfigError(key, f"one of {', '.join(options)}", raw)
        return str(text)
    raise ConfigError(key, f"a registered type (unknown {kind})")


def read_config_file(path: str) -> Dict[str, str]:
    """Parse a flat `key = value` file; '#' starts a comment"""
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError('config', "an existing file", path)
    values = dotenv_values(config_path)
    logger.info(f"✓ Loaded {len(values)} keys from {config_path}")
    return {key.strip(): value for key, value in values.items()}


@dataclass
class RunConfig:
    """Fully resolved, typed parameters of one subcommand, with their provenance"""

    command: str
    values: Dict[str, Any]
    sources: Dict[str, str] = field(default_factory=dict)

    def __getitem__(self, key: str) -> Any:
        return self.values[key]

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def with_value(self, key: str, value: Any) -> 'RunConfig':
        values = dict(self.values)
        values[key] = parse_value(key, value)
        return RunConfig(self.command, values, dict(self.sources, **{key: 'grid'}))

    def echo(self) -> Dict[str, str]:
        """Resolved values as text, for the CSV header"""
        echoed = {'command': self.command}
        for key, value in self.values.items():
            if key in NOT_ECHOED:
                continue
            if isinstance(value, bool):
                echoed[key] = 'true' if value else 'false'
            elif isinstance(value, float):
                echoed[key] = format_number(value)
            else:
                echoed[key] = str(value)
        return echoed

    # ── domain builders: each re-validates the invariants of its type ──

    def system_params(self) -> SystemParams:
        return SystemParams(omega=self['omega'])

    def state(self) -> PureState:
        return {'x': x_polarized_state,
                'excited': lambda: basis_state(0),
                'ground': lambda: basis_state(1)}[self['state']]()

    def mode(self) -> ThermalFactorMode:
        return ThermalFactorMode.parse(self['mode'])

    def thermal_params(self, mode: Optional[ThermalFactorMode] = None) -> ThermalFieldParams:
        return ThermalFieldParams(
            g=self['g'],
            omega=self['omega'],
            temperature=self.get('temperature', 0.0),
            mode=mode or self.mode(),
        )

    def n_measurements(self) -> int:
        value = self['n_measurements']
        if value < 1:
            raise ConfigError('n_measurements', "integer >= 1", value)
        return value

    def grid(self, start_default: float = None, stop_default: float = None) -> GridSpec:
        start = self['grid_start']
        stop = self['grid_stop']
        if start == AUTO:
            if start_default is None:
                raise ConfigError('grid_start', "a number (no automatic default here)")
            start = start_default
        if stop == AUTO:
            if stop_default is None:
                raise ConfigError('grid_stop', "a number (no automatic default here)")
            stop = stop_default
        return GridSpec(start=start, stop=stop, count=self['grid_count'], log=self['grid_log'])


def resolve_config(command: str, config_path: Optional[str] = None,
                   flags: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Merge defaults < config file < flags for one subcommand

    Args:
        command: Subcommand name
        config_path: Optional `key = value` file
        flags: Flag values; None entries mean "not given"

    Returns:
        Typed RunConfig

    Raises:
        ConfigError: naming the offending key
    """
    if command not in COMMAND_DEFAULTS:
        raise ConfigError('command', f"one of {', '.join(COMMAND_DEFAULTS)}", command)
    defaults = COMMAND_DEFAULTS[command]
    values = {key: parse_value(key, value) for key, value in defaults.items()}
    sources = {key: 'default' for key in defaults}

    if config_path:
        for key, raw in read_config_file(config_path).items():
            if key not in defaults:
                raise ConfigError(key, f"a key understood by {command}")
            values[key] = parse_value(key, raw)
            sources[key] = 'file'

    for key, raw in (flags or {}).items():
        if raw is None:
            continue
        if key not in defaults:
            raise ConfigError(key, f"a flag understood by {command}")
        values[key] = parse_value(key, raw)
        sources[key] = 'flag'

    logger.debug(f"Resolved {command} config: {values}")
    return RunConfig(command=command, values=values, sources=sources)
