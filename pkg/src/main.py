"""
Start up script for the application
"""

import os
import sys

from src.app_data import AppData
from src.controllers.controller_cli import ControllerCli
from src.models.logger import Logger
from src.models.settings import Settings


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if not os.path.isdir(AppData.USER_FOLDER):
        os.makedirs(AppData.USER_FOLDER)

    logger = Logger(log_to_stderr="--verbose" in argv)
    logger.info(f"Start {AppData.APP_NAME} V{AppData.VERSION}")
    logger.debug(f"Application path: {AppData.APP_PATH}")
    logger.debug(f"User folder     : {AppData.USER_FOLDER}")
    exit_code = ControllerCli(logger, Settings()).run(argv)
    logger.info("Application stopped")
    logger.shut_down()
    return exit_code


if __name__ == "__main__":

    sys.exit(main())
