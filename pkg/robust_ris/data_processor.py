"""
Report Processor
Aggregates trial outcomes and reads/writes sweep CSV files
"""
from pathlib import Path
from typing import List, Sequence, Union
import logging

import pandas as pd

from robust_ris.exceptions import ReportIOError
from robust_ris.schemas.bench import (
    CSV_COLUMNS,
    SweepReport,
    SweepRow,
    SweepSpec,
    TrialAccounting,
    TrialOutcome,
)

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.10g"


class ReportProcessor:
    """Turns per-trial outcomes into report rows and CSV files"""

    def aggregate(
        self,
        spec: SweepSpec,
        schemes: Sequence[str],
        outcomes: List[TrialOutcome],
        record_timing: bool = False,
    ) -> SweepReport:
        """One row per (value, scheme) in sweep order"""
        df = pd.DataFrame([o.model_dump() for o in outcomes])
        if df.empty:
            df = pd.DataFrame(columns=list(TrialOutcome.model_fields))
        df["scheme"] = df["scheme"].map(lambda s: getattr(s, "value", s))
        df["failed"] = df["error"].notna()

        rows, accounting = [], []
        for value_index, value in enumerate(spec.values):
            for scheme in schemes:
                scheme = getattr(scheme, "value", scheme)
                group = df[(df["value_index"] == value_index) & (df["scheme"] == scheme)]
                done = group[~group["failed"]]
                n_done = len(done)
                if n_done:
                    anmse = done["anmse"].astype(float)
                    std = float(anmse.std(ddof=1)) if n_done > 1 else 0.0
                    row = SweepRow(
                        variable=spec.variable.value,
                        value=float(value),
                        scheme=scheme,
                        anmse_mean=float(anmse.mean()),
                        anmse_std=std,
                        mean_iterations=float(done["iterations"].mean()),
                        mean_wallclock_s=float(done["wallclock_s"].mean()) if record_timing else 0.0,
                    )
                else:
                    nan = float("nan")
                    row = SweepRow(
                        variable=spec.variable.value, value=float(value), scheme=scheme,
                        anmse_mean=nan, anmse_std=nan, mean_iterations=nan, mean_wallclock_s=nan,
                    )
                rows.append(row)
                accounting.append(
                    TrialAccounting(
                        value=float(value),
                        scheme=scheme,
                        completed=n_done,
                        failed=int(group["failed"].sum()),
                    )
                )
        return SweepReport(rows=rows, accounting=accounting)

    def to_frame(self, report: SweepReport) -> pd.DataFrame:
        return pd.DataFrame([r.model_dump() for r in report.rows], columns=CSV_COLUMNS)

    def emit_csv(self, report: SweepReport, path: Union[str, Path]) -> Path:
        """Write the report rows with the fixed header"""
        path = Path(path)
        try:
            if path.parent and not path.parent.exists():
                path.parent.mkdir(parents=True, exist_ok=True)
            self.to_frame(report).to_csv(
                path,
                index=False,
                float_format=FLOAT_FORMAT,
                lineterminator="\n",
                encoding="utf-8",
            )
        except OSError as e:
            logger.error(f"Error writing report to {path}: {e}")
            raise ReportIOError(f"cannot write report to {path}: {e}") from e
        logger.info(f"Wrote {len(report.rows)} rows to {path}")
        return path

    def read_csv(self, path: Union[str, Path]) -> SweepReport:
        """Parse a CSV written by emit_csv"""
        path = Path(path)
        try:
            df = pd.read_csv(path, dtype={"variable": str, "scheme": str})
        except OSError as e:
            logger.error(f"Error reading report from {path}: {e}")
            raise ReportIOError(f"cannot read report from {path}: {e}") from e
        missing = [c for c in CSV_COLUMNS if c not in df.columns]
        if missing:
            raise ReportIOError(f"{path} lacks columns {missing}")
        rows = [SweepRow(**record) for record in df[CSV_COLUMNS].to_dict(orient="records")]
        return SweepReport(rows=rows)


def emit_csv(report: SweepReport, path: Union[str, Path]) -> Path:
    return ReportProcessor().emit_csv(report, path)


def read_csv(path: Union[str, Path]) -> SweepReport:
    return ReportProcessor().read_csv(path)
