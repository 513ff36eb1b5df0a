import logging
import os

LOGGER_NAME = "ostrowski"
LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"


def build_logger(log_path: str, level="INFO") -> logging.Logger:
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    target = os.path.abspath(log_path)
    for handler in list(logger.handlers):
        # one file per process; a new path replaces the old handler
        if isinstance(handler, logging.FileHandler) and handler.baseFilename != target:
            logger.removeHandler(handler)
            handler.close()
    if not logger.handlers:
        parent = os.path.dirname(target)
        os.makedirs(parent, exist_ok=True)
        handler = logging.FileHandler(target)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
