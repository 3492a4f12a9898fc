"""Deterministic run artifacts: run.csv time series, manifest.json, and
final_state.json.  CSV numbers carry 17 significant digits so a run is
reproducible bit-for-bit from its own output.
"""

import datetime
import json
import platform
from pathlib import Path

from . import __version__

BASE_COLUMNS = [
    "t",
    "energy",
    "log10_energy",
    "max_misalign",
    "max_dist",
    "constraint_drift",
]
TAIL_COLUMNS = [
    "lemma41_max",
    "lemma43_residual",
    "speed_min",
    "speed_max",
    "dissipation_residual",
]

RNG_ALGORITHM = "numpy.random.default_rng (PCG64)"


def _fmt(x):
    return f"{x:.17g}"


class CsvSink:
    """Writes DiagRecords as rows of run.csv with a fixed column contract."""

    def __init__(self, path, n_det_columns=1):
        self.path = Path(path)
        self.n_det = n_det_columns
        det_cols = [
            "det_123" if k == 0 else f"det_extra_{k}" for k in range(n_det_columns)
        ]
        self.columns = BASE_COLUMNS + det_cols + TAIL_COLUMNS
        self._fh = open(self.path, "w", newline="\n")
        self._fh.write(",".join(self.columns) + "\n")
        self.records = []

    def __call__(self, rec):
        self.records.append(rec)
        dets = list(rec.coplanarity[: self.n_det])
        dets += [float("nan")] * (self.n_det - len(dets))
        row = (
            [rec.t, rec.energy, rec.log10_energy, rec.max_misalign, rec.max_dist,
             rec.constraint_drift]
            + dets
            + [rec.lemma41_max, rec.lemma43_residual, rec.speed_min, rec.speed_max,
               rec.dissipation_residual]
        )
        self._fh.write(",".join(_fmt(v) for v in row) + "\n")

    def close(self):
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def write_manifest(path, cfg, status, start_time, end_time, detail=None):
    """Write manifest.json; called on success and on failure alike."""
    manifest = {
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "version": __version__,
        "rng": RNG_ALGORITHM,
        "python": platform.python_version(),
        "start_time": start_time.isoformat(),
        "end_time": end_time.isoformat(),
        "status": status,
    }
    if detail is not None:
        manifest["status_detail"] = detail
    Path(path).write_text(json.dumps(manifest, indent=2) + "\n")


def write_final_state(path, state):
    payload = {
        "t": state.t,
        "x": state.x.tolist(),
        "v": state.v.tolist(),
    }
    Path(path).write_text(json.dumps(payload) + "\n")


def run_to_directory(cfg, outdir):
    """Execute one run, writing run.csv, manifest.json and final_state.json.

    Returns (status, records); status is 'completed', 'blow_up' or 'error'.
    """
    from .dynamics import BlowUpError, simulate

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    start = datetime.datetime.now(datetime.timezone.utc)
    status, detail = "completed", None
    records = []
    with CsvSink(outdir / "run.csv") as sink:
        try:
            final = simulate(cfg, sink)
            write_final_state(outdir / "final_state.json", final)
        except BlowUpError as err:
            status = "blow_up"
            detail = {"particle": err.particle, "time": err.time}
        except Exception as err:  # manifest must exist even on failure
            status = "error"
            detail = {"message": str(err)}
        records = sink.records
    end = datetime.datetime.now(datetime.timezone.utc)
    write_manifest(outdir / "manifest.json", cfg, status, start, end, detail)
    return status, records
