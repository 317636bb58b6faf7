"""
Log em arquivo - log_message, get_log_directory
"""
import os
import sys
import datetime
import tempfile
from pathlib import Path


def get_log_directory() -> Path:
    override = os.getenv('GREAD_LOG_DIR', '')
    try:
        if override:
            log_dir = Path(override)
        elif sys.platform == "win32":
            log_dir = Path(os.getenv('APPDATA') or Path.home() / "AppData/Roaming") / "gread" / "logs"
        elif sys.platform == "darwin":
            log_dir = Path.home() / "Library/Application Support" / "gread" / "logs"
        else:
            log_dir = Path.home() / ".local/share" / "gread" / "logs"
        log_dir.mkdir(parents=True, exist_ok=True)
        return log_dir
    except Exception:
        temp_dir = Path(tempfile.gettempdir()) / "gread" / "logs"
        temp_dir.mkdir(parents=True, exist_ok=True)
        return temp_dir


def log_message(message: str, include_traceback: bool = False, is_error: bool = False) -> None:

    try:
        log_path = get_log_directory() / 'log.txt'
        timestamp = datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        prefix = "[ERROR]" if is_error else "[INFO]"
        line = f"[{timestamp}] {prefix} {message}\n"

        with open(log_path, 'a', encoding='utf-8') as f:
            f.write(line)

            if include_traceback:
                import traceback
                tb = traceback.format_exc()
                f.write(f"[{timestamp}] TRACEBACK:\n{tb}\n")

            f.flush()
            if hasattr(os, 'fsync'):
                try:
                    os.fsync(f.fileno())
                except OSError:
                    pass

        if os.getenv('GREAD_VERBOSE', '') == '1':
            sys.stderr.write(line)
    except Exception:
        pass  # Falhas de log nunca interrompem o cálculo
