from .norms import convergence_order, l2_error, l2_norm, linf_time_error
from .table import COLUMNS, ConvergenceTable, ErrorRecord, format_float
from .snapshots import FieldSnapshot, emit_snapshot, sample_state
from .config import RunConfig, parse_config
