import sys

from cmfield.cli import main

sys.exit(main())
