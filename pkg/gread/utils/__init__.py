# Utils module init
from gread.utils.logs import log_message, get_log_directory
from gread.utils.seeding import make_rng, derive_seed
from gread.utils.csvio import write_csv, read_csv, format_value

__all__ = [
    'log_message',
    'get_log_directory',
    'make_rng',
    'derive_seed',
    'write_csv',
    'read_csv',
    'format_value',
]
