import sys

from lexinfo.cli import main

sys.exit(main())
