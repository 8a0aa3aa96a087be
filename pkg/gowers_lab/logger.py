import logging
import sys

# Configure logging; stdout is reserved for JSON-lines reports
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger('gowers_lab')


def set_log_level(level: str) -> None:
    """Apply a level name such as 'DEBUG' or 'WARNING' to the package logger"""
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))
