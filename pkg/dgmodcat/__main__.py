# __main__.py
import logging
import sys

from dgmodcat.cli.commands import main
from dgmodcat.system.default_paths import get_log_file_path
from dgmodcat.system.logging_configuration import configure_logging

logger = logging.getLogger(__name__)


def cli_main():
    configure_logging(str(get_log_file_path()))
    logger.info(f"Running dgmodcat with arguments {sys.argv[1:]}")
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    cli_main()
