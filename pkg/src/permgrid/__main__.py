"""``python -m permgrid``."""

import sys

from .cli import main

sys.exit(main())
