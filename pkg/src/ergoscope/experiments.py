"""Monte-Carlo sweeps over random pure states at fixed energy.

Each sample is evaluated independently, so sweeps can run on a process pool.
Rows always come back ordered by sample index.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace

from .ergotropy import k_ergotropic_score
from .geometric import GtmeConfig, ggm, gtme
from .random_states import RandomStateConfig, random_pure_cm

__all__ = ["CSV_HEADER", "ExperimentRecord", "evaluate_sample", "run_scatter", "worker_count", "write_csv"]

THREADS_ENV = "ERGOSCOPE_THREADS"
MAX_SCATTER_MODES = 6


@dataclass(frozen=True)
class ExperimentRecord:
    sample: int
    n_modes: int
    total_energy: float
    seed: int
    delta2: float
    ggm: float
    deltaN: float
    gtme: float
    gtme_converged: bool

    def as_row(self) -> list:
        def fmt(value):
            if isinstance(value, bool):
                return "true" if value else "false"
            if isinstance(value, float):
                return format(value, ".17g")
            return str(value)

        return [fmt(getattr(self, f.name)) for f in fields(self)]


CSV_HEADER = tuple(f.name for f in fields(ExperimentRecord))


def worker_count(requested: int | None = None) -> int:
    """Pool size: ``requested`` or the CPU count, capped by ``ERGOSCOPE_THREADS``."""
    n = requested or os.cpu_count() or 1
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def evaluate_sample(
    config: RandomStateConfig, index: int, gtme_config: GtmeConfig | None = None
) -> ExperimentRecord:
    """Draw sample ``index`` and evaluate every quantifier on it.

    ``gtme_config = None`` skips the optimisation and records ``nan``. The
    optimiser seed is the per-sample seed, so a row never depends on which
    other rows were computed.
    """
    cm = random_pure_cm(config, index)
    n = config.n_modes
    sample_seed = int(config.seed) ^ int(index)
    delta2 = k_ergotropic_score(cm, 2).score if n >= 2 else 0.0
    delta_n = k_ergotropic_score(cm, n).score
    if gtme_config is None:
        value, converged = math.nan, False
    else:
        res = gtme(cm, replace(gtme_config, seed=sample_seed))
        value, converged = res.value, res.converged
    return ExperimentRecord(
        sample=int(index),
        n_modes=n,
        total_energy=float(config.total_energy),
        seed=sample_seed,
        delta2=float(delta2),
        ggm=float(ggm(cm)),
        deltaN=float(delta_n),
        gtme=float(value),
        gtme_converged=bool(converged),
    )


def _evaluate_packed(args):
    return evaluate_sample(*args)


def run_scatter(
    config: RandomStateConfig,
    samples: int,
    gtme_config: GtmeConfig | None = GtmeConfig(),
    workers: int | None = None,
) -> list:
    """Evaluate samples ``0..samples-1`` of ``config``'s ensemble.

    Parameters
    ----------
    config : RandomStateConfig
        Ensemble; ``n_modes`` must lie in ``[2, 6]``.
    samples : int
        Number of rows, at least one.
    gtme_config : GtmeConfig or None
        Optimiser settings, or ``None`` to skip the GTME column.
    workers : int, optional
        Process count before the environment cap; one means in-process.
    """
    from .errors import InvalidArgumentError

    if not 2 <= config.n_modes <= MAX_SCATTER_MODES:
        raise InvalidArgumentError(f"scatter supports 2..{MAX_SCATTER_MODES} modes, got {config.n_modes}")
    if int(samples) != samples or samples < 1:
        raise InvalidArgumentError(f"samples must be a positive integer, got {samples!r}")
    jobs = [(config, i, gtme_config) for i in range(int(samples))]
    n_workers = min(worker_count(workers), len(jobs))
    if n_workers == 1:
        return [_evaluate_packed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=n_workers) as pool:
        # map preserves submission order
        return list(pool.map(_evaluate_packed, jobs, chunksize=max(1, len(jobs) // (4 * n_workers))))


def write_csv(records, stream=None) -> str:
    """Write the fixed-header CSV to ``stream`` and return the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow(rec.as_row())
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text
