#!/usr/bin/env python3
"""
coxrig - Main Application Entry Point
"""

import logging
import sys

from config.settings import load_settings
from src.cli.commands import dispatch

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


def main():
    """Main application entry point"""
    # Load application settings
    settings = load_settings()
    logging.basicConfig(level=settings.get("log_level", "WARNING"), format=LOG_FORMAT, stream=sys.stderr)

    sys.exit(dispatch(sys.argv[1:], settings))


if __name__ == "__main__":
    main()
