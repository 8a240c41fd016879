import sys

from isoclean.cli import main

sys.exit(main())
