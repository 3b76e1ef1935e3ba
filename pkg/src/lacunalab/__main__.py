"""Module entry point: python -m lacunalab ..."""

import sys

from .cli import main

sys.exit(main())
