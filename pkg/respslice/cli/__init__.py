"""
The command line interface of respslice.
"""
from .console import main, build_parser, EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_REJECTED
