import logging
import sys

from .errors import ConfigError, FixedPointError, SolverBlowupError
from .harness.config import parse_config
from .study import ConvergenceStudy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_IO = 4


def main(argv=None):
    """Entry point of ``gs-spectral``; returns the process exit code."""
    logging.basicConfig(format="%(asctime)s %(levelname)s %(name)s: %(message)s", level=logging.INFO)
    try:
        config = parse_config(argv)
    except ConfigError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
    except OSError as err:
        logger.error("Cannot read config file: %s", err)
        return EXIT_IO
    if config.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        study = ConvergenceStudy(config)
        table = study.run()
    except ConfigError as err:
        logger.error("%s", err)
        return EXIT_CONFIG
    except (SolverBlowupError, FixedPointError) as err:
        logger.error("Reference run failed: %s", err)
        return EXIT_BLOWUP
    except OSError as err:
        logger.error("I/O error: %s", err)
        return EXIT_IO

    print(table.format())
    if len(table) and all(record.failed for record in table):
        logger.error("Every run of the sweep blew up")
        return EXIT_BLOWUP
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
