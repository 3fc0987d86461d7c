"""
Logging-Konfiguration.

Alle Module loggen über die Standardbibliothek (`logging.getLogger(__name__)`);
structlog übernimmt nur das Rendering auf stderr. stdout bleibt den Ergebnissen
(JSON/DOT) vorbehalten.
"""
import logging
import sys

import structlog

_SHARED_PROCESSORS = [
    structlog.stdlib.add_log_level,
    structlog.stdlib.add_logger_name,
]


def configure_logging(level: str = "WARNING") -> None:
    """Installiert einen einzelnen stderr-Handler mit structlog-Formatter."""
    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=_SHARED_PROCESSORS,
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            structlog.dev.ConsoleRenderer(colors=False),
        ],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(level.upper())
