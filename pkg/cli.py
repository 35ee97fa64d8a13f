from fermat_first_case import utils
from fermat_first_case.cli import main as run_cli
import logging


logging.basicConfig(
    level=utils.log_level(),
    format="%(asctime)s | %(levelname)s | %(name)s | %(message)s"
)

logger = logging.getLogger(__name__)

def main():
    """
    Main entry point for the fermat-first-case command line.

    Dispatches to the criterion checks (wendt, class-number, theorem1, germain,
    corollary2, condition1, theorem2) and the surveys (survey table, qi, census,
    pure). Payloads go to stdout, logs and diagnostics to stderr.

    Environment Variables Required:
        None. FERMAT_LOG_LEVEL and the FERMAT_* caps are optional and may be
        set in a .env file.
    """
    logger.debug("Starting fermat-first-case...")
    run_cli()


if __name__ == "__main__":
    main()
