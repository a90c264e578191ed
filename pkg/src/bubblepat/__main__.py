import sys

from bubblepat.cli import main

sys.exit(main())
