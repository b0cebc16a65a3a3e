"""Main entry point for the ecl_gsr package."""

import sys

from ecl_gsr.cli import main

if __name__ == "__main__":
    sys.exit(main())
