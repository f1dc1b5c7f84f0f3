"""
Tables Module - Sweep tables, grids and deterministic CSV emission
"""
import io
import logging
from dataclasses import dataclass, field
from typing import Dict, List, TextIO, Tuple

import numpy as np
import pandas as pd

from .errors import ConfigError, NumericalError

logger = logging.getLogger(__name__)


def format_number(value: float) -> str:
    """17 significant digits, enough to round-trip a double"""
    if isinstance(value, (bool, np.bool_)):
        return '1' if value else '0'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


@dataclass(frozen=True)
class GridSpec:
    """start, stop, count and spacing of a 1-D parameter grid"""

    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        if int(self.count) != self.count or self.count < 2:
            raise ConfigError('grid_count', "integer >= 2", self.count)
        if not self.stop > self.start:
            raise ConfigError('grid_stop', "grid_stop > grid_start", (self.start, self.stop))
        if self.log and self.start <= 0:
            raise ConfigError('grid_start', "grid_start > 0 for a log grid", self.start)

    def values(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, int(self.count))
        return np.linspace(self.start, self.stop, int(self.count))

    def integers(self) -> List[int]:
        """Distinct rounded grid values, for integer-valued parameters"""
        return sorted({int(round(v)) for v in self.values()})


@dataclass
class SweepTable:
    """
    Rectangular table of results with its resolved configuration

    Text columns are allowed (e.g. a method tag); all numeric cells must be
    finite, with NaN tolerated only in columns listed in optional_columns.
    """

    columns: List[str]
    rows: List[Tuple] = field(default_factory=list)
    metadata: Dict[str, str] = field(default_factory=dict)
    summary: Dict[str, float] = field(default_factory=dict)
    optional_columns: Tuple[str, ...] = ()

    def add_row(self, *values) -> None:
        if len(values) != len(self.columns):
            raise NumericalError(f"row has {len(values)} cells, table has {len(self.columns)} columns")
        self.rows.append(tuple(int(v) if isinstance(v, (bool, np.bool_)) else v for v in values))

    @property
    def frame(self) -> pd.DataFrame:
        """The rows as a DataFrame, with every numeric cell checked for finiteness"""
        frame = pd.DataFrame(self.rows, columns=self.columns)
        numeric = frame.select_dtypes(include='number').drop(columns=list(self.optional_columns), errors='ignore')
        bad = ~np.isfinite(numeric.to_numpy(dtype=float))
        if bad.any():
            row, col = np.argwhere(bad)[0]
            raise NumericalError(f"non-finite value {numeric.iat[row, col]!r} in column {numeric.columns[col]}")
        return frame

    def column(self, name: str) -> List:
        return self.frame[name].tolist()

    def write_csv(self, stream: TextIO) -> None:
        """Header comments, then the table; LF line endings"""
        frame = self.frame
        for key in sorted(self.metadata):
            stream.write(f"# {key} = {self.metadata[key]}\n")
        for key in sorted(self.summary):
            stream.write(f"# {key} = {format_number(self.summary[key])}\n")
        frame.to_csv(stream, index=False, float_format='%.17g', na_rep='nan', lineterminator='\n')

    def to_csv(self) -> str:
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()


