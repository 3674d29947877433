import sys

from kbranch.cli import main

sys.exit(main())
