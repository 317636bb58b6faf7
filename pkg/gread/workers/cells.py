"""
Workers de célula - CellWorker, CellWorkerSignals e o pool que executa uma grade de células
"""
import threading
from typing import Callable, List, Optional, Sequence

import psutil
from PyQt5.QtCore import QObject, QRunnable, QThreadPool, Qt, pyqtSignal, pyqtSlot as Slot

from gread.utils.logs import log_message


class CellWorkerSignals(QObject):
    """Sinais para o worker de célula"""
    finished = pyqtSignal(int, object)
    error = pyqtSignal(int, str)


class CellWorker(QRunnable):
    """Executa uma célula (valor da grade, semente) e emite o resultado com o índice da célula"""
    def __init__(self, index: int, task: Callable[[], object]):
        super().__init__()
        self.index = index
        self.task = task
        self.signals = CellWorkerSignals()
        self.setAutoDelete(False)

    @Slot()
    def run(self):
        try:
            self.signals.finished.emit(self.index, self.task())
        except Exception as e:
            log_message(f"[SWEEP WORKER] Célula {self.index} falhou: {e}", include_traceback=True, is_error=True)
            self.signals.error.emit(self.index, f"{type(e).__name__}: {e}")


class CellFailure:
    """Marcador de célula que terminou com erro"""
    def __init__(self, index: int, message: str):
        self.index = index
        self.message = message

    def __repr__(self):
        return f"CellFailure({self.index}, {self.message!r})"


def default_jobs() -> int:
    return psutil.cpu_count(logical=False) or 1


def run_cells(tasks: Sequence[Callable[[], object]], jobs: Optional[int] = None) -> List[object]:
    """Executa as tarefas no QThreadPool e devolve os resultados na ordem das tarefas

    Uma tarefa que levanta exceção aparece como CellFailure na sua posição.
    """
    jobs = jobs or default_jobs()
    results: List[object] = [None] * len(tasks)
    lock = threading.Lock()

    def on_finished(index, value):
        with lock:
            results[index] = value

    def on_error(index, message):
        with lock:
            results[index] = CellFailure(index, message)

    if jobs == 1:
        # Sem pool: mesma semântica, na thread atual
        for index, task in enumerate(tasks):
            worker = CellWorker(index, task)
            worker.signals.finished.connect(on_finished, Qt.DirectConnection)
            worker.signals.error.connect(on_error, Qt.DirectConnection)
            worker.run()
        return results

    thread_pool = QThreadPool()
    thread_pool.setMaxThreadCount(jobs)
    workers = []
    for index, task in enumerate(tasks):
        worker = CellWorker(index, task)
        worker.signals.finished.connect(on_finished, Qt.DirectConnection)
        worker.signals.error.connect(on_error, Qt.DirectConnection)
        workers.append(worker)
        thread_pool.start(worker)
    thread_pool.waitForDone()
    return results
