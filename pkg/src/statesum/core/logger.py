import logging
import os
from logging.handlers import RotatingFileHandler

from .config import settings

LOGGING_LEVEL = getattr(logging, settings.LOG_LEVEL)
LOGGING_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logging.basicConfig(level=LOGGING_LEVEL, format=LOGGING_FORMAT)

if settings.LOG_TO_FILE:
    LOG_DIR = settings.LOG_DIR
    if not os.path.exists(LOG_DIR):
        os.makedirs(LOG_DIR)

    LOG_FILE_PATH = os.path.join(LOG_DIR, settings.LOG_FILE_NAME)

    file_handler = RotatingFileHandler(LOG_FILE_PATH, maxBytes=10485760, backupCount=5)
    file_handler.setLevel(LOGGING_LEVEL)
    file_handler.setFormatter(logging.Formatter(LOGGING_FORMAT))

    logging.getLogger("").addHandler(file_handler)


def set_level(level: str) -> None:
    logging.getLogger("").setLevel(getattr(logging, level.upper()))
