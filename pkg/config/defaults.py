"""
Default Parameters per Subcommand

Every key a subcommand understands appears here with its default value.
A `key = value` config file and command-line flags override these, in that
order. Grids over temperature are expressed as T/Omega.
"""
import math

# Key -> parser name understood by src.run_config
KEY_TYPES = {
    'method': 'choice:variance,weak,thermal',
    'mode': 'choice:paper,derived',
    'state': 'choice:x,excited,ground',
    'grid_param': 'choice:omega,g,temperature,gamma,tau_m,n_measurements',
    'omega': 'float',
    'g': 'float',
    'temperature': 'float',
    'gamma': 'float',
    'tau': 'float',
    'tau_m': 'float',
    'ti': 'float',
    'tf': 'float',
    'n_measurements': 'int',
    'grid_start': 'float_or_auto',
    'grid_stop': 'float_or_auto',
    'grid_count': 'int',
    'grid_log': 'bool',
    'both_modes': 'bool',
    'delta_e': 'float_or_auto',
    'n_side': 'int_or_auto',
    'coupling': 'float_or_auto',
    'spacing_ratio': 'float',
    'bandwidth_ratio': 'float',
    'workers': 'int',
}

# Keys that never change the numbers in a table, so they are not echoed
NOT_ECHOED = {'workers'}

ZENO_TIME = {
    'method': 'variance',
    'mode': 'derived',
    'state': 'x',
    'omega': 1.0,
    'g': 0.1,
    'temperature': 0.0,
    'gamma': 1.0,
    'tau_m': 1.0,
    'n_measurements': 100,
    'grid_param': 'omega',
    'grid_start': 'auto',
    'grid_stop': 'auto',
    'grid_count': 0,  # 0 = single row
    'grid_log': False,
}

SWEEP_TEMPERATURE = {
    'mode': 'derived',
    'both_modes': False,
    'omega': 1.0,
    'g': 0.1,
    'n_measurements': 100,
    'grid_start': 0.0,
    'grid_stop': 5.0,
    'grid_count': 51,
    'grid_log': False,
    'workers': 1,
}

SIMULATE_PROJECTIVE = {
    'state': 'x',
    'omega': 1.0,
    'tau': math.pi,
    'n_measurements': 1,  # used when grid_count = 0
    'grid_start': 1.0,
    'grid_stop': 10000.0,
    'grid_count': 9,
    'grid_log': True,
}

WEAK_SURVIVAL = {
    'gamma': 1.0,
    'ti': 0.0,
    'tf': 1.0,
    'grid_start': 'auto',  # defaults to ti
    'grid_stop': 'auto',  # defaults to tf
    'grid_count': 11,
    'grid_log': False,
}

VERIFY_BATH = {
    'gamma': 0.1,
    'spacing_ratio': 20.0,
    'bandwidth_ratio': 50.0,
    'delta_e': 'auto',  # gamma / spacing_ratio
    'n_side': 'auto',  # bandwidth_ratio * gamma / delta_e
    'coupling': 'auto',  # sqrt(gamma * delta_e / pi)
    'grid_start': 0.0,
    'grid_stop': 'auto',  # 2 / gamma
    'grid_count': 101,
    'grid_log': False,
}

COMMAND_DEFAULTS = {
    'zeno-time': ZENO_TIME,
    'sweep-temperature': SWEEP_TEMPERATURE,
    'simulate-projective': SIMULATE_PROJECTIVE,
    'weak-survival': WEAK_SURVIVAL,
    'verify-bath': VERIFY_BATH,
}
