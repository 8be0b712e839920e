from .logger_config import configure_logging, APP_LOGGER_NAME

__all__ = ['configure_logging', 'APP_LOGGER_NAME']
