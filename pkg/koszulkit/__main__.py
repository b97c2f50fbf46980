"""Entry point for ``python -m koszulkit``."""
from __future__ import annotations

import sys

from koszulkit.cli import main

if __name__ == "__main__":
    sys.exit(main())
