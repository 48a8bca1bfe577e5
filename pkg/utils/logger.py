import logging
import sys
from pathlib import Path
from typing import Optional

from colorama import Fore, Style
from colorama import init as colorama_init

LEVEL_COLOURS = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Fore.RED + Style.BRIGHT,
}

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class UnicodeStreamHandler(logging.StreamHandler):
    """Stream handler that writes UTF-8 regardless of the console code page"""

    def emit(self, record):
        try:
            msg = self.format(record)
            stream = self.stream
            if hasattr(stream, "buffer"):
                stream.buffer.write(msg.encode("utf-8", errors="replace") + self.terminator.encode("utf-8"))
            else:
                stream.write(msg + self.terminator)
            self.flush()
        except Exception:
            self.handleError(record)


class ColourFormatter(logging.Formatter):
    """Colours the level name only; the file handler keeps plain text"""

    def format(self, record):
        colour = LEVEL_COLOURS.get(record.levelno, "")
        original = record.levelname
        record.levelname = f"{colour}{original}{Style.RESET_ALL}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def setup_logging(debug: bool = False, log_file: Optional[str] = None, quiet: bool = False):
    """Configure the root logger with a coloured console handler and an optional file"""
    colorama_init()

    level = logging.DEBUG if debug else logging.INFO
    logger = logging.getLogger()
    logger.setLevel(level)

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    console_handler = UnicodeStreamHandler(sys.stderr)
    console_handler.setFormatter(ColourFormatter(LOG_FORMAT, datefmt=DATE_FORMAT))
    console_handler.setLevel(logging.WARNING if quiet else level)
    logger.addHandler(console_handler)

    # Reduce verbosity for some noisy libraries
    logging.getLogger("matplotlib").setLevel(logging.WARNING)
    logging.getLogger("numba").setLevel(logging.WARNING)

    logger.debug("Logging configured (debug=%s, quiet=%s, file=%s)", debug, quiet, log_file)
    return logger
