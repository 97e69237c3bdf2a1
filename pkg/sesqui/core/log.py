import logging

from .config import settings

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = None):
    """Configure le logger racine du projet (une seule fois)."""
    logger = logging.getLogger("sesqui")
    if logger.handlers:
        logger.setLevel(level or settings.LOG_LEVEL)
        return logger
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level or settings.LOG_LEVEL)
    return logger
