import sys

from rwhopf.cli import main

sys.exit(main())
