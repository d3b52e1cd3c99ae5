import logging

from src.config.settings import settings
from src.utils.session_context import run_state

_FORMAT = "%(asctime)s %(levelname)s [%(run)s] %(name)s: %(message)s"


class _RunFilter(logging.Filter):
    def filter(self, record: logging.LogRecord) -> bool:
        record.run = run_state.get()
        return True


def get_logger(name: str) -> logging.Logger:
    """Return a module logger tagged with the current run context."""
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler.addFilter(_RunFilter())
        logger.addHandler(handler)
        logger.propagate = False
    logger.setLevel(settings.LOG_LEVEL.upper())
    return logger
