class ExportError(Exception):
    """Export failed (bad corpus, model failure, non-finite output)."""


class ConfigurationError(ExportError):
    """Invalid exporter configuration (unknown metric, bad dims, ...)."""
