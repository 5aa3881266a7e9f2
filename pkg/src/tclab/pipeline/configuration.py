import os
import sys

import psutil

from tclab.errors import InputError
from tclab.pipeline.constants import WORKERS_ENV


def configure_workers(workers: int) -> int:
    """Resolve the worker count from user input, the environment and availability."""
    override = os.environ.get(WORKERS_ENV)
    if override is not None:
        if not override.strip().isdigit() or int(override) < 1:
            raise InputError(
                f"{WORKERS_ENV}={override!r} is not a positive integer."
            )
        return int(override)

    available_cpus = get_available_cpus()
    if workers == -1:
        return available_cpus
    elif workers < 1:
        raise InputError(f"Worker count must be positive or -1, got {workers}.")
    elif workers <= available_cpus:
        return workers
    else:
        print("Number of requested workers exceeds available CPUs.", file=sys.stderr)
        return available_cpus


def get_available_cpus() -> int:
    try:
        process = psutil.Process()
        cpu_affinity = process.cpu_affinity()
        return len(cpu_affinity)
    except Exception:  # noqa: BLE001
        if "SLURM_CPUS_PER_TASK" in os.environ:
            return int(os.environ["SLURM_CPUS_PER_TASK"])
        elif "PBS_NP" in os.environ:
            return int(os.environ["PBS_NP"])
        elif "LSB_DJOB_NUMPROC" in os.environ:
            return int(os.environ["LSB_DJOB_NUMPROC"])
        # Final fallback: detect all cores
        return os.cpu_count() or 1
