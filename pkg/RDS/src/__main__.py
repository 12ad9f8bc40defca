import sys

from RDS.src.cli import main

sys.exit(main())
