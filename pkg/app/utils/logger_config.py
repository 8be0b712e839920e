import logging

import logfire
import sentry_sdk

from app.config import AppConfig

# --- Application Logger Name ---
# Root of the logger hierarchy for this package. Modules ask for child loggers,
# e.g. logging.getLogger(f"{APP_LOGGER_NAME}.Evaluator"), and inherit the
# handlers configured below.
APP_LOGGER_NAME = "qceq"

# logging.getLevelNamesMapping() exists from Python 3.11; on older interpreters
# use the identical copy of the module's name-to-level table.
_level_names_mapping = getattr(logging, "getLevelNamesMapping", lambda: logging._nameToLevel.copy())


def get_numeric_loglevel(level: str) -> int:
    """
    Converts a level name to the numeric constant of the logging module.

    Names are matched case-insensitively and surrounding whitespace is ignored,
    so values copied from a .env file or typed on the command line both work.

    Args:
        level: The level name (e.g. "DEBUG", "warning").

    Returns:
        The numeric level (e.g. logging.DEBUG).

    Raises:
        ValueError: For names the logging module does not define.
    """
    numeric_level = _level_names_mapping().get(level.strip().upper())
    if numeric_level is None:
        raise ValueError(f"Invalid log level string: '{level}'")
    return numeric_level


_logging_configured = False  # set once the handlers are installed


def configure_logging(console_level: str | None = None):
    """
    Configures logging for the `qceq` logger hierarchy.

    A console handler is always installed on the base logger. Logfire is
    configured when LOGFIRE_TOKEN is set and Sentry when PROD_EXECUTION and
    SENTRY_DSN are both set. The CLI calls this once per invocation; later calls
    are no-ops.

    Args:
        console_level: Overrides AppConfig.LOG_LEVEL_CONSOLE (used by `--log-level`).

    Raises:
        ValueError: If the console level is not a valid logging level name.
    """
    global _logging_configured
    if _logging_configured:
        return

    level_str = console_level or AppConfig.LOG_LEVEL_CONSOLE
    try:
        console_log_level_num = get_numeric_loglevel(level_str)
    except ValueError as e:
        # The caller turns this into a usage error; say which setting was wrong first.
        print(f"CRITICAL ERROR: Invalid LOG_LEVEL_CONSOLE ('{level_str}'): {e}. "
              f"Please check your .env file or environment variables.")
        raise

    app_base_logger = logging.getLogger(APP_LOGGER_NAME)
    # The logger passes everything; each handler applies its own level.
    app_base_logger.setLevel(logging.DEBUG)
    if app_base_logger.hasHandlers():
        app_base_logger.handlers.clear()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(module)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # --- Console Handler ---
    ch = logging.StreamHandler()  # stderr; stdout carries the reports
    ch.setLevel(console_log_level_num)
    ch.setFormatter(formatter)
    app_base_logger.addHandler(ch)

    # --- Sentry ---
    # Only production runs report errors, and never with personal data attached.
    if AppConfig.PROD_EXECUTION and AppConfig.SENTRY_DSN:
        sentry_sdk.init(dsn=AppConfig.SENTRY_DSN, send_default_pii=False)

    # --- Logfire ---
    # LOGFIRE_ENVIRONMENT tags the run ('local', 'ci', 'test', ...).
    if AppConfig.LOGFIRE_TOKEN:
        logfire.configure(token=AppConfig.LOGFIRE_TOKEN, environment=AppConfig.LOGFIRE_ENVIRONMENT)
        logfire.instrument_pydantic()
    else:
        app_base_logger.debug("LOGFIRE_TOKEN not found. Logfire will not be configured.")

    _logging_configured = True

    config_logger = logging.getLogger(f"{APP_LOGGER_NAME}.config")
    config_logger.debug(
        f"Logging for '{APP_LOGGER_NAME}' initialized. "
        f"Console Handler: Level {logging.getLevelName(console_log_level_num)}. "
        f"Logfire configured: {'Yes' if AppConfig.LOGFIRE_TOKEN else 'No'} "
        f"(Env: {AppConfig.LOGFIRE_ENVIRONMENT})."
    )
