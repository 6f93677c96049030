"""Entry point for `python -m pyswbnet`."""

import sys

from pyswbnet.cli import main

sys.exit(main())
