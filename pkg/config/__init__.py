"""Default parameter sets for the zeno-thermal subcommands"""

from .defaults import COMMAND_DEFAULTS, KEY_TYPES, NOT_ECHOED

__all__ = ['COMMAND_DEFAULTS', 'KEY_TYPES', 'NOT_ECHOED']
