"""
Debug logging for the central-index tools.

Library modules log through logging.getLogger("CentralIndexDebug") and stay silent
until configure_logging(debug=True) (or DEBUG_MODE=1) attaches the file handlers:

  debug.log        everything, detailed format
  errors_only.log  ERROR and above
  stderr           CRITICAL only
"""
import functools
import inspect
import logging
import os
import sys
import time
import traceback
from collections import defaultdict
from datetime import datetime
from pathlib import Path

LOGGER_NAME = "CentralIndexDebug"

# Log file paths (repository root)
LOG_DIR = Path(__file__).parent.parent.parent
LOG_FILE = LOG_DIR / "debug.log"
ERROR_FILE = LOG_DIR / "errors_only.log"

DETAILED_FORMAT = (
    '%(asctime)s.%(msecs)03d | %(levelname)-8s | %(filename)-20s:%(lineno)-4d | '
    '%(funcName)-30s | %(message)s'
)

logger = logging.getLogger(LOGGER_NAME)
logger.addHandler(logging.NullHandler())


def debug_enabled(environ=None) -> bool:
    env = os.environ if environ is None else environ
    return env.get("DEBUG_MODE", "").strip().lower() in ("1", "true", "yes", "on")


def configure_logging(debug: bool = False, log_dir: Path = LOG_DIR) -> logging.Logger:
    """
    Install handlers on the package logger. Safe to call more than once:
    previous handlers are replaced.
    """
    debug = debug or debug_enabled()

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    logger.propagate = False

    if not debug:
        logger.setLevel(logging.WARNING)
        logger.addHandler(logging.NullHandler())
        return logger

    logger.setLevel(logging.DEBUG)
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)
    formatter = logging.Formatter(DETAILED_FORMAT, datefmt='%H:%M:%S')

    # File handler - ALL logs
    file_handler = logging.FileHandler(log_dir / LOG_FILE.name, mode='w', encoding='utf-8')
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)

    # Error-only handler
    error_handler = logging.FileHandler(log_dir / ERROR_FILE.name, mode='w', encoding='utf-8')
    error_handler.setLevel(logging.ERROR)
    error_handler.setFormatter(formatter)

    # Console handler for CRITICAL errors only
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.CRITICAL)
    console_handler.setFormatter(logging.Formatter('💥 CRITICAL: %(message)s'))

    for handler in (file_handler, error_handler, console_handler):
        logger.addHandler(handler)

    logger.info(f"{'='*80}")
    logger.info(f"CENTRAL INDEX DEBUG LOG - session {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    logger.info(f"Python: {sys.version.split()[0]} | Platform: {sys.platform} | CWD: {os.getcwd()}")
    logger.info(f"{'='*80}")
    return logger


# ============================================================================
# PERFORMANCE TRACKING
# ============================================================================

class PerformanceTracker:
    """Running timings per operation; flags calls slower than twice their average."""

    SLOW_SECONDS = 1.0

    def __init__(self):
        self.timings = defaultdict(list)

    def record(self, name: str, duration: float) -> None:
        times = self.timings[name]
        times.append(duration)
        avg = sum(times) / len(times)

        if len(times) > 3 and duration > avg * 2:
            logger.warning(f"🐌 PERFORMANCE ANOMALY: {name} took {duration:.2f}s "
                           f"({duration / avg:.1f}x the average {avg:.2f}s)")
        elif duration > self.SLOW_SECONDS:
            logger.warning(f"🐌 SLOW OPERATION: {name} took {duration:.2f}s")


perf_tracker = PerformanceTracker()


# ============================================================================
# DECORATOR AND HELPERS
# ============================================================================

def log_errors(func):
    """Log entry, arguments, duration and any traceback of the wrapped call."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        full_name = f"{func.__module__}.{func.__qualname__}"
        logger.info(f"🟢 ENTRY: {full_name}")

        try:
            bound = inspect.signature(func).bind(*args, **kwargs)
            for arg_name, arg_value in bound.arguments.items():
                if arg_name != "self":
                    logger.debug(f"   arg '{arg_name}' = {repr(arg_value)[:200]}")
        except (TypeError, ValueError):
            pass

        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            duration = time.perf_counter() - start
            logger.error(f"❌ EXCEPTION in {full_name} after {duration:.3f}s: "
                         f"{type(e).__name__}: {e}")
            for line in traceback.format_exc().splitlines():
                logger.debug(line)
            raise

        duration = time.perf_counter() - start
        perf_tracker.record(full_name, duration)
        logger.info(f"✅ SUCCESS: {full_name} ({duration:.3f}s)")
        return result

    return wrapper


def log_operation(operation_name, status="START", details=None):
    """Log a CLI-level operation marker."""
    icons = {"START": "🔵", "SUCCESS": "✅", "ERROR": "❌", "WARNING": "⚠️", "INFO": "ℹ️"}
    levels = {"ERROR": logging.ERROR, "WARNING": logging.WARNING}

    msg = f"{icons.get(status, '🔹')} OPERATION {status}: {operation_name}"
    if details:
        msg += f"\n   Details: {details}"
    logger.log(levels.get(status, logging.INFO), msg)
