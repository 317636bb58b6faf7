# Workers module init
from gread.workers.cells import CellWorkerSignals, CellWorker, CellFailure, default_jobs, run_cells

__all__ = [
    'CellWorkerSignals',
    'CellWorker',
    'CellFailure',
    'default_jobs',
    'run_cells',
]
