#!/usr/bin/env python3
"""
Irrational Base Nets - Command Line Entry Point
"""
import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from src.utils.config import NetConfig
from src.app import IrrationalNetsApp


def main(argv=None):
    """Main entry point for the application."""
    argv = sys.argv[1:] if argv is None else argv
    verbose = NetConfig.DEBUG or "--verbose" in argv
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.ERROR,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%H:%M:%S"
    )
    app = IrrationalNetsApp(logging)
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
