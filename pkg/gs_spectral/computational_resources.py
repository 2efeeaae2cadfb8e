import logging
import multiprocessing

logger = logging.getLogger(__name__)


class ComputationalResources:
    def __init__(self, memory=2, cpus=None, bytes_per_float=8):
        """Common and simple interface to know how much CPU and memory is available.

        ``memory`` is in GB. ``cpus`` is capped at the number of CPUs of the machine."""
        self.memory = memory
        self.bytes_per_float = bytes_per_float
        self.cpus = min(cpus or multiprocessing.cpu_count(), multiprocessing.cpu_count())

    def eigensolve_bytes(self, n_dofs):
        """Approximate footprint of a dense generalized eigensolve: both matrices, modes and workspace."""
        return 4 * n_dofs ** 2 * self.bytes_per_float

    def check_eigensolve(self, n_dofs):
        """Log a warning and return ``False`` when a dense eigensolve of size ``n_dofs`` exceeds ``memory``."""
        required = self.eigensolve_bytes(n_dofs) / 1024 ** 3
        if required > self.memory:
            logger.warning(
                "Dense eigensolve of size %d needs about %.2f GB, memory budget is %.2f GB",
                n_dofs,
                required,
                self.memory,
            )
            return False
        return True

    def threads_for(self, n_tasks):
        return max(1, min(self.cpus, n_tasks))
