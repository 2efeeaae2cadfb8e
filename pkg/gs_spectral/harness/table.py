import csv
import logging

from dataclasses import astuple, dataclass

from .norms import convergence_order

logger = logging.getLogger(__name__)

COLUMNS = (
    "example",
    "q",
    "h",
    "sigma",
    "norm_u_exact",
    "norm_u_num",
    "err_u",
    "co_u",
    "norm_v_exact",
    "norm_v_num",
    "err_v",
    "co_v",
    "setup_s",
    "solve_s",
)


def format_float(x):
    """Six significant digits, scientific notation below 1e-3 in magnitude, empty for ``None``."""
    if x is None:
        return ""
    x = float(x)
    if 0 < abs(x) < 1e-3:
        return "{:.5e}".format(x)
    return "{:.6g}".format(x)


def _parse_float(text):
    return None if text == "" else float(text)


@dataclass
class ErrorRecord:
    """One row of a convergence table.

    Norms and errors are maxima over the whole steps of the run. Rows whose
    run failed keep ``example``, ``q``, ``h`` and ``sigma`` and leave the
    numeric fields empty.
    """

    example: str
    q: int
    h: float
    sigma: float
    norm_u_exact: float = None
    norm_u_num: float = None
    err_u: float = None
    co_u: float = None
    norm_v_exact: float = None
    norm_v_num: float = None
    err_v: float = None
    co_v: float = None
    setup_s: float = None
    solve_s: float = None

    def __post_init__(self):
        for name in ("err_u", "err_v"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError("{} must be non-negative, got {}".format(name, value))

    @property
    def failed(self):
        return self.err_u is None or self.err_v is None

    def to_row(self):
        return [str(self.example), str(self.q)] + [format_float(x) for x in astuple(self)[2:]]

    @classmethod
    def from_row(cls, row):
        values = [row[name] for name in COLUMNS]
        return cls(values[0], int(values[1]), *[_parse_float(v) for v in values[2:]])


class ConvergenceTable:
    """Rows of a convergence study with their observed orders.

    When more than one ``sigma`` appears, orders are temporal: consecutive
    rows of decreasing ``sigma`` at the same ``h``. Otherwise they are
    spatial: consecutive rows of decreasing ``h``.
    """

    def __init__(self, records=()):
        self.records = list(records)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def append(self, record):
        self.records.append(record)

    @property
    def is_temporal(self):
        return len({r.sigma for r in self.records}) > 1

    def compute_orders(self):
        """Fill ``co_u`` and ``co_v`` of every row that has a coarser neighbour."""
        if self.is_temporal:
            groups = {}
            for r in self.records:
                groups.setdefault(r.h, []).append(r)
            sequences = [sorted(g, key=lambda r: -r.sigma) for g in groups.values()]
        else:
            sequences = [sorted(self.records, key=lambda r: -r.h)]
        for sequence in sequences:
            sequence[0].co_u = sequence[0].co_v = None
            for coarse, fine in zip(sequence[:-1], sequence[1:]):
                fine.co_u = convergence_order(coarse.err_u, fine.err_u)
                fine.co_v = convergence_order(coarse.err_v, fine.err_v)
        return self

    def to_csv(self, filename):
        with open(filename, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(COLUMNS)
            for record in self.records:
                writer.writerow(record.to_row())
        logger.info("Convergence table written to %s", filename)

    @classmethod
    def from_csv(cls, filename):
        with open(filename, newline="") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != COLUMNS:
                raise ValueError("Unexpected CSV header {}".format(reader.fieldnames))
            return cls(ErrorRecord.from_row(row) for row in reader)

    def format(self):
        """Fixed-width text rendering for terminals."""
        header = "{:>8s} {:>10s} {:>11s} {:>11s} {:>8s} {:>11s} {:>8s} {:>9s}".format(
            "h", "sigma", "|||u|||", "err_u", "CO_u", "err_v", "CO_v", "solve_s"
        )
        lines = [header, "-" * len(header)]
        for r in self.records:
            cells = [format_float(x) or "---" for x in (r.h, r.sigma, r.norm_u_num, r.err_u,
                                                        r.co_u, r.err_v, r.co_v, r.solve_s)]
            lines.append(
                "{:>8s} {:>10s} {:>11s} {:>11s} {:>8s} {:>11s} {:>8s} {:>9s}".format(*cells)
            )
        return "\n".join(lines)
