"""CSV and gnuplot output of sweeps."""
import csv
import os
from typing import List, Optional, Sequence, TextIO, Tuple

import numpy as np

from ..errors import FormatError
from .simulator import WerPoint


def csv_header(levels: int) -> List[str]:
    """sigma,vnr_db,trials,errors_l0..,wer_l0..,wer_coded,pe_uncoded,wer_total."""
    return (
        ["sigma", "vnr_db", "trials"]
        + [f"errors_l{level}" for level in range(levels)]
        + [f"wer_l{level}" for level in range(levels)]
        + ["wer_coded", "pe_uncoded", "wer_total"]
    )


def _row(point: WerPoint) -> List[str]:
    return (
        [f"{point.sigma:.6f}", f"{point.vnr_db:.4f}", str(point.trials)]
        + [str(e) for e in point.level_errors]
        + [f"{w:.6e}" for w in point.level_wers]
        + [
            f"{point.wer_coded:.6e}",
            f"{point.pe_uncoded:.6e}",
            f"{point.wer_total:.6e}",
        ]
    )


def write_csv(points: Sequence[WerPoint], out: TextIO, levels: Optional[int] = None):
    """Write one row per point under the fixed header."""
    if levels is None:
        levels = len(points[0].level_errors) if points else 0
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(csv_header(levels))
    for point in points:
        writer.writerow(_row(point))


def save_csv(points: Sequence[WerPoint], path: str, levels: Optional[int] = None):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_csv(points, f, levels)


def interval_header(levels: int) -> List[str]:
    """sigma,vnr_db then lower/upper bounds of wer_l0..,wer_coded,wer_total."""
    names = [f"wer_l{level}" for level in range(levels)] + ["wer_coded", "wer_total"]
    return ["sigma", "vnr_db"] + [f"{n}_{b}" for n in names for b in ("lo", "hi")]


def _interval_row(point: WerPoint, confidence: float) -> List[str]:
    bounds = point.level_intervals(confidence)
    bounds += [point.interval(confidence), point.total_interval(confidence)]
    return [f"{point.sigma:.6f}", f"{point.vnr_db:.4f}"] + [
        f"{b:.6e}" for pair in bounds for b in pair
    ]


def intervals_path(csv_path: str) -> str:
    """Sidecar of a sweep CSV: `sweep.csv` -> `sweep.intervals.csv`."""
    return os.path.splitext(csv_path)[0] + ".intervals.csv"


def save_intervals(
    points: Sequence[WerPoint],
    path: str,
    levels: Optional[int] = None,
    confidence: float = 0.95,
):
    """Clopper-Pearson bounds of every WER of a sweep, one row per point."""
    if levels is None:
        levels = len(points[0].level_errors) if points else 0
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(interval_header(levels))
        for point in points:
            writer.writerow(_interval_row(point, confidence))


def read_csv(path: str) -> List[dict]:
    """Rows of a sweep CSV as dicts of floats."""
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "vnr_db" not in reader.fieldnames:
            raise FormatError(f"{path}: not a sweep CSV")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            try:
                rows.append({key: float(value) for key, value in row.items()})
            except (TypeError, ValueError):
                raise FormatError(f"{path}:{lineno}: non-numeric field")
        return rows


def read_reference_curve(path: str) -> Tuple[np.ndarray, np.ndarray]:
    """Two-column (vnr_db, wer) CSV of a published curve.

    A header line and `#` comments are skipped.
    """
    vnr_db, wer = [], []
    with open(path, "r", encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [x.strip() for x in line.split(",")]
            if len(fields) != 2:
                raise FormatError(f"{path}:{lineno}: expected two columns")
            try:
                x, y = float(fields[0]), float(fields[1])
            except ValueError:
                if not vnr_db:
                    continue
                raise FormatError(f"{path}:{lineno}: non-numeric field")
            vnr_db.append(x)
            wer.append(y)
    return np.asarray(vnr_db), np.asarray(wer)


def write_dat(
    rows: Sequence[dict],
    path: str,
    reference: Optional[Tuple[np.ndarray, np.ndarray]] = None,
    intervals: Optional[Sequence[dict]] = None,
):
    """gnuplot data: block 0 the sweep, block 1 the reference curve.

    Sweep columns are vnr_db, wer_coded, wer_total and the per-level WERs.
    With `intervals` (rows of an intervals sidecar) every WER column is
    followed by its lower and upper bound, for `yerrorlines`.
    """
    levels = sorted(key for key in (rows[0] if rows else {}) if key.startswith("wer_l"))
    names = ["wer_coded", "wer_total"] + levels
    bounds = {row["vnr_db"]: row for row in intervals or ()}

    columns = ["vnr_db"]
    for name in names:
        columns += [name] + ([f"{name}_lo", f"{name}_hi"] if intervals else [])

    with open(path, "w", encoding="utf-8") as f:
        f.write("# " + " ".join(columns) + "\n")
        for row in sorted(rows, key=lambda r: r["vnr_db"]):
            if intervals and row["vnr_db"] not in bounds:
                raise FormatError(f"no interval row for vnr_db {row['vnr_db']}")
            values = [row["vnr_db"]]
            for name in names:
                values.append(row[name])
                if intervals:
                    interval = bounds[row["vnr_db"]]
                    values += [interval[f"{name}_lo"], interval[f"{name}_hi"]]
            f.write(" ".join(f"{v:.6e}" for v in values) + "\n")

        if reference is not None:
            f.write("\n\n# reference vnr_db wer\n")
            for x, y in zip(*reference):
                f.write(f"{x:.6e} {y:.6e}\n")
