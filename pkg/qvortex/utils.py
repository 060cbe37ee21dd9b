# -*- coding: utf-8 -*-
#
#  qvortex – shared utilities
#

import importlib
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

# ----------------------------------------------------------------------
#  Logging
# ----------------------------------------------------------------------

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def get_logger(name):
    return logging.getLogger(name)


def configure_logging(level="WARNING"):
    logging.basicConfig(format=LOG_FORMAT, level=getattr(logging, str(level).upper(), logging.WARNING))


# ----------------------------------------------------------------------
#  Dotted-path resolution (hooks registry)
# ----------------------------------------------------------------------

def get_attr(dotted_path):
    """Resolve ``package.module.attr`` to the attribute."""
    module_name, _, attr = dotted_path.rpartition(".")
    return getattr(importlib.import_module(module_name), attr)


# ----------------------------------------------------------------------
#  Worker pool
# ----------------------------------------------------------------------

THREADS_ENV = "QVORTEX_THREADS"


def worker_count():
    """Worker cap from ``QVORTEX_THREADS``; defaults to the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            get_logger(__name__).warning("ignoring non-integer %s=%r", THREADS_ENV, raw)
    return os.cpu_count() or 1


def parallel_rows(func, rows, workers=None):
    """Apply ``func`` to each chunk of ``rows`` and stack the results in order.

    Chunks are contiguous so the output does not depend on the worker count.
    """
    rows = np.asarray(rows)
    workers = workers or worker_count()
    if workers == 1 or len(rows) < 2:
        return func(rows)
    chunks = np.array_split(rows, min(workers, len(rows)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(func, chunks))
    return np.concatenate(parts, axis=0)


def wrap_phase(delta):
    """Map phase differences to (-pi, pi]."""
    wrapped = np.mod(np.asarray(delta) + np.pi, 2 * np.pi) - np.pi
    return np.where(wrapped == -np.pi, np.pi, wrapped)
