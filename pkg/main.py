"""
Main Orchestrator - zeno-thermal command-line front end
"""
import argparse
import logging
import os
import sys
import traceback
from datetime import datetime
from typing import Dict, List, Optional

from dotenv import load_dotenv

from src.commands import COMMANDS
from src.errors import ConfigError, NumericalError
from src.run_config import resolve_config

logger = logging.getLogger('zeno_thermal')

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_INTERRUPTED = 130

# Flag dest -> config key; flags not given stay None and do not override
FLAG_KEYS = {
    'mode': 'mode', 'method': 'method', 'state': 'state', 'omega': 'omega', 'g': 'g',
    'temperature': 'temperature', 'n_measurements': 'n_measurements', 'gamma': 'gamma',
    'tau': 'tau', 'tau_m': 'tau_m', 'ti': 'ti', 'tf': 'tf', 'grid_start': 'grid_start',
    'grid_stop': 'grid_stop', 'grid_count': 'grid_count', 'grid_log': 'grid_log',
    'grid_param': 'grid_param', 'both_modes': 'both_modes', 'delta_e': 'delta_e',
    'n_side': 'n_side', 'coupling': 'coupling', 'spacing_ratio': 'spacing_ratio',
    'bandwidth_ratio': 'bandwidth_ratio', 'workers': 'workers',
}


def configure_logging() -> None:
    """Stderr logging, plus a log file when ZENO_LOG_FILE is set"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    log_file = os.environ.get('ZENO_LOG_FILE')
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=os.environ.get('ZENO_LOG_LEVEL', 'INFO').upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='zeno-thermal',
        description='Zeno timescales of a two-level atom in a thermal magnetic field',
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        sub.add_argument('--config', help='key = value file; flags override it')
        sub.add_argument('--out', default='-', help='CSV path (default: stdout)')
        sub.add_argument('--mode', choices=['paper', 'derived'])
        sub.add_argument('--method', choices=['variance', 'weak', 'thermal'])
        sub.add_argument('--state', choices=['x', 'excited', 'ground'])
        for flag in ('omega', 'g', 'temperature', 'gamma', 'tau', 'tau-m', 'ti', 'tf',
                     'grid-start', 'grid-stop', 'delta-e', 'coupling', 'spacing-ratio',
                     'bandwidth-ratio'):
            sub.add_argument(f'--{flag}')
        for flag in ('n-measurements', 'grid-count', 'n-side', 'workers'):
            sub.add_argument(f'--{flag}')
        sub.add_argument('--grid-param')
        sub.add_argument('--grid-log', action='store_const', const='true')
        sub.add_argument('--both-modes', action='store_const', const='true')
    return parser


class ZenoThermalOrchestrator:
    """
    Resolves configuration, runs one analysis command and writes its CSV
    """

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.command = args.command

    def _flags(self) -> Dict[str, Optional[str]]:
        """Only flags that were given on the command line"""
        return {key: getattr(self.args, dest) for dest, key in FLAG_KEYS.items()
                if getattr(self.args, dest, None) is not None}

    def run(self) -> Dict:
        """
        Execute the command

        Returns:
            Dictionary with the table and run timing
        """
        start_time = datetime.now()
        logger.info("=" * 60)
        logger.info(f"zeno-thermal {self.command}")
        logger.info("=" * 60)

        config = resolve_config(self.command, self.args.config, self._flags())
        table = COMMANDS[self.command](config)
        self._emit(table)

        duration = (datetime.now() - start_time).total_seconds()
        logger.info(f"✓ {self.command} complete: {len(table.rows)} rows in {duration:.2f} seconds")
        return {'status': 'success', 'rows': len(table.rows), 'duration_seconds': duration, 'table': table}

    def _emit(self, table) -> None:
        # Rendered in full first, so a failed check leaves no partial file
        text = table.to_csv()
        if self.args.out in (None, '-'):
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        with open(self.args.out, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        logger.info(f"✓ Wrote {self.args.out}")


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, run the command, return the exit code"""
    args = build_parser().parse_args(argv)
    try:
        ZenoThermalOrchestrator(args).run()
        return EXIT_OK
    except ConfigError as e:
        logger.error(f"✗ Configuration error: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"✗ Numerical error: {e}")
        return EXIT_NUMERICAL
    except KeyboardInterrupt:
        logger.info("\nRun interrupted by user")
        return EXIT_INTERRUPTED
    except Exception as e:
        logger.error(f"Fatal error: {e}")
        logger.error(traceback.format_exc())
        return EXIT_UNEXPECTED


def main():
    """Main entry point"""
    # Load ZENO_LOG_LEVEL / ZENO_LOG_FILE from a .env file if present
    load_dotenv()
    configure_logging()
    sys.exit(run())


if __name__ == '__main__':
    main()
